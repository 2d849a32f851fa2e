#pragma once

// Experiment configuration: a single JSON file holding every knob of a run.
// Defaults: 7,500 features, 10 folds, 50 topics x 2,000 sweeps, 0.10
// annotation threshold, 20 permutations, C = 1.0, Winnow 1.05/0.95/2.5/0.5.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "storyscope/corpus.hpp"
#include "storyscope/cross_validation.hpp"
#include "storyscope/entity_grid.hpp"
#include "storyscope/lda.hpp"
#include "storyscope/topics.hpp"

namespace storyscope {

struct SamplingConfig {
    bool dedup = true;
    double english_threshold = kDefaultEnglishThreshold;
    std::size_t per_author_cap = 0;  // 0: no cap
    std::size_t token_budget = 0;    // 0: no downsampling
};

struct ClassificationConfig {
    std::vector<Algorithm> algorithms{Algorithm::svm, Algorithm::winnow, Algorithm::naive_bayes};
    std::size_t folds = 10;
    std::size_t top_features = 30;
    std::string blocklist_path;  // empty: bundled dream-word list
    bool save_models = false;
    ClassifierConfig classifier;
};

struct SampleSelector {
    std::string label;
    std::string source;  // empty: any source
};

struct TopicsConfig {
    LdaParams lda;  // seed is taken from the experiment seed
    double threshold = 0.10;
    ContentMode filter = ContentMode::stoplist;
    std::size_t contrast_sample_size = 2000;
    SampleSelector contrast_a;  // empty label: first label
    SampleSelector contrast_b;  // empty label: second label
};

struct CoherenceConfig {
    std::string lexicon_path;       // empty: bundled 60-connective list
    std::string train_corpus_path;  // empty: train on the held-out half of each label
    std::size_t history = 2;
    double smoothing = 1.0;
    std::size_t n_perm = 20;
    std::size_t max_test_docs = 0;  // 0: all
};

struct ExperimentConfig {
    std::map<std::string, std::string> corpora;  // label -> JSONL path
    std::int64_t seed = 1;
    SamplingConfig sampling;
    ClassificationConfig classification;
    TopicsConfig topics;
    CoherenceConfig coherence;
    std::string output_dir = "out";
    nlohmann::json source;  // as read, for hashing
};

struct ConfigParse {
    ExperimentConfig config;
    std::vector<std::string> violations;
};

namespace detail {

template <typename T>
void read_field(const nlohmann::json& obj, const char* key, T& out, const std::string& where,
                std::vector<std::string>& violations) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    try {
        out = it->get<T>();
    } catch (const nlohmann::json::exception&) {
        violations.push_back(where + "." + key + ": wrong type");
    }
}

inline void read_count(const nlohmann::json& obj, const char* key, std::size_t& out, const std::string& where,
                       std::vector<std::string>& violations) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return;
    if (!it->is_number_integer()) {
        violations.push_back(where + "." + key + ": must be an integer");
        return;
    }
    const auto v = it->get<std::int64_t>();
    if (v < 0) {
        violations.push_back(where + "." + key + ": must be non-negative");
        return;
    }
    out = static_cast<std::size_t>(v);
}

inline const nlohmann::json& section(const nlohmann::json& root, const char* key, std::vector<std::string>& violations) {
    static const nlohmann::json empty = nlohmann::json::object();
    auto it = root.find(key);
    if (it == root.end() || it->is_null()) return empty;
    if (!it->is_object()) {
        violations.push_back(std::string(key) + ": must be an object");
        return empty;
    }
    return *it;
}

inline std::string resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path path(p);
    if (path.is_relative()) path = base / path;
    return path.lexically_normal().string();
}

inline SampleSelector read_selector(const nlohmann::json& obj, const char* key, const std::string& where,
                                    std::vector<std::string>& violations) {
    SampleSelector s;
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return s;
    if (it->is_string()) {
        s.label = it->get<std::string>();
    } else if (it->is_object()) {
        read_field(*it, "label", s.label, where + "." + key, violations);
        read_field(*it, "source", s.source, where + "." + key, violations);
    } else {
        violations.push_back(where + "." + key + ": must be a label string or {label, source}");
    }
    return s;
}

}  // namespace detail

// Reads the JSON document; structural problems become violations rather than
// exceptions. Relative paths resolve against base_dir.
inline ConfigParse parse_config(const nlohmann::json& root, const std::filesystem::path& base_dir) {
    using namespace detail;
    ConfigParse r;
    auto& c = r.config;
    auto& v = r.violations;
    if (!root.is_object()) {
        v.push_back("configuration must be a JSON object");
        return r;
    }
    c.source = root;

    if (auto it = root.find("corpora"); it == root.end() || !it->is_object() || it->empty()) {
        v.push_back("corpora: must map each label to a JSONL path");
    } else {
        for (const auto& [label, path] : it->items()) {
            if (!path.is_string()) v.push_back("corpora." + label + ": path must be a string");
            else c.corpora[label] = resolve(base_dir, path.get<std::string>());
        }
    }
    if (auto it = root.find("seed"); it != root.end()) {
        if (!it->is_number_integer()) v.push_back("seed: must be an integer");
        else c.seed = it->get<std::int64_t>();
    }
    read_field(root, "output_dir", c.output_dir, "", v);
    c.output_dir = resolve(base_dir, c.output_dir);

    const auto& s = section(root, "sampling", v);
    read_field(s, "dedup", c.sampling.dedup, "sampling", v);
    read_field(s, "english_threshold", c.sampling.english_threshold, "sampling", v);
    read_count(s, "per_author_cap", c.sampling.per_author_cap, "sampling", v);
    read_count(s, "token_budget", c.sampling.token_budget, "sampling", v);

    const auto& cl = section(root, "classification", v);
    if (auto it = cl.find("algorithms"); it != cl.end()) {
        c.classification.algorithms.clear();
        if (!it->is_array()) v.push_back("classification.algorithms: must be a list");
        else
            for (const auto& a : *it) {
                try {
                    c.classification.algorithms.push_back(parse_algorithm(a.get<std::string>()));
                } catch (const std::exception& e) {
                    v.push_back(std::string("classification.algorithms: ") + e.what());
                }
            }
    }
    auto& cc = c.classification.classifier;
    read_count(cl, "k_features", cc.k_features, "classification", v);
    read_count(cl, "n_max", cc.n_max, "classification", v);
    read_count(cl, "folds", c.classification.folds, "classification", v);
    read_count(cl, "top_features", c.classification.top_features, "classification", v);
    read_field(cl, "positive_label", cc.positive_label, "classification", v);
    read_field(cl, "save_models", c.classification.save_models, "classification", v);
    read_field(cl, "blocklist", c.classification.blocklist_path, "classification", v);
    c.classification.blocklist_path = resolve(base_dir, c.classification.blocklist_path);
    std::string freq = "corpus";
    read_field(cl, "frequency", freq, "classification", v);
    if (freq == "corpus") cc.frequency = FrequencyMode::corpus;
    else if (freq == "document") cc.frequency = FrequencyMode::document;
    else v.push_back("classification.frequency: must be \"corpus\" or \"document\"");
    const auto& w = section(cl, "winnow", v);
    read_field(w, "alpha", cc.winnow.alpha, "classification.winnow", v);
    read_field(w, "beta", cc.winnow.beta, "classification.winnow", v);
    read_field(w, "theta_plus", cc.winnow.theta_plus, "classification.winnow", v);
    read_field(w, "theta_minus", cc.winnow.theta_minus, "classification.winnow", v);
    read_count(w, "iterations", cc.winnow.iterations, "classification.winnow", v);
    const auto& sv = section(cl, "svm", v);
    read_field(sv, "C", cc.svm.C, "classification.svm", v);
    read_field(sv, "tolerance", cc.svm.tolerance, "classification.svm", v);
    const auto& nb = section(cl, "naive_bayes", v);
    read_field(nb, "smoothing", cc.nb_smoothing, "classification.naive_bayes", v);

    const auto& t = section(root, "topics", v);
    read_count(t, "T", c.topics.lda.topics, "topics", v);
    read_count(t, "iterations", c.topics.lda.iterations, "topics", v);
    bool alpha_given = t.contains("alpha") && !t["alpha"].is_null();
    read_field(t, "alpha", c.topics.lda.alpha, "topics", v);
    if (!alpha_given && c.topics.lda.topics > 0) c.topics.lda.alpha = 5.0 / static_cast<double>(c.topics.lda.topics);
    read_field(t, "beta", c.topics.lda.beta, "topics", v);
    read_field(t, "threshold", c.topics.threshold, "topics", v);
    std::string mode = "stoplist";
    read_field(t, "filter_mode", mode, "topics", v);
    try {
        c.topics.filter = parse_content_mode(mode);
    } catch (const std::exception& e) {
        v.push_back(std::string("topics.filter_mode: ") + e.what());
    }
    read_count(t, "contrast_sample_size", c.topics.contrast_sample_size, "topics", v);
    c.topics.contrast_a = read_selector(t, "contrast_a", "topics", v);
    c.topics.contrast_b = read_selector(t, "contrast_b", "topics", v);

    const auto& co = section(root, "coherence", v);
    read_field(co, "lexicon", c.coherence.lexicon_path, "coherence", v);
    c.coherence.lexicon_path = resolve(base_dir, c.coherence.lexicon_path);
    read_field(co, "train_corpus", c.coherence.train_corpus_path, "coherence", v);
    c.coherence.train_corpus_path = resolve(base_dir, c.coherence.train_corpus_path);
    read_count(co, "h", c.coherence.history, "coherence", v);
    read_field(co, "smoothing", c.coherence.smoothing, "coherence", v);
    read_count(co, "n_perm", c.coherence.n_perm, "coherence", v);
    read_count(co, "max_test_docs", c.coherence.max_test_docs, "coherence", v);
    return r;
}

inline ConfigParse load_config_file(const std::string& path) {
    ConfigParse r;
    std::ifstream in(path);
    if (!in) {
        r.violations.push_back("config file not found: " + path);
        return r;
    }
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const nlohmann::json::parse_error& e) {
        r.violations.push_back(std::string("config is not valid JSON: ") + e.what());
        return r;
    }
    return parse_config(root, std::filesystem::path(path).parent_path());
}

namespace detail {
inline std::set<std::string> authors_in(const std::string& path) {
    std::set<std::string> out;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        try {
            auto j = nlohmann::json::parse(line);
            if (j.is_object() && j.contains("author") && j["author"].is_string()) out.insert(j["author"].get<std::string>());
        } catch (const nlohmann::json::exception&) {
        }
    }
    return out;
}
}  // namespace detail

// Every constraint a run depends on. Empty means the configuration is usable.
inline std::vector<std::string> validate(const ExperimentConfig& c) {
    namespace fs = std::filesystem;
    std::vector<std::string> v;
    if (c.seed < 0) v.push_back("seed: must be non-negative, got " + std::to_string(c.seed));
    if (c.corpora.empty()) v.push_back("corpora: at least one corpus is required");
    std::set<std::string> authors;
    for (const auto& [label, path] : c.corpora) {
        if (!fs::is_regular_file(path)) {
            v.push_back("corpora." + label + ": file does not exist: " + path);
            continue;
        }
        auto a = detail::authors_in(path);
        authors.insert(a.begin(), a.end());
    }
    if (!(c.sampling.english_threshold >= 0.0 && c.sampling.english_threshold <= 1.0))
        v.push_back("sampling.english_threshold: must lie in [0, 1]");
    const auto& cl = c.classification;
    if (cl.folds < 2) v.push_back("classification.folds: must be >= 2");
    else if (!authors.empty() && cl.folds > authors.size())
        v.push_back("classification.folds: " + std::to_string(cl.folds) + " folds exceed the " +
                    std::to_string(authors.size()) + " distinct authors (each author must fit in one fold)");
    if (cl.classifier.k_features < 1) v.push_back("classification.k_features: must be >= 1");
    if (cl.classifier.n_max < 1) v.push_back("classification.n_max: must be >= 1");
    if (cl.algorithms.empty()) v.push_back("classification.algorithms: at least one algorithm is required");
    if (!cl.blocklist_path.empty() && !fs::is_regular_file(cl.blocklist_path))
        v.push_back("classification.blocklist: file does not exist: " + cl.blocklist_path);
    if (!cl.classifier.positive_label.empty() && !c.corpora.count(cl.classifier.positive_label))
        v.push_back("classification.positive_label: \"" + cl.classifier.positive_label + "\" is not a corpus label");
    try {
        cl.classifier.winnow.validate();
    } catch (const std::exception& e) {
        v.push_back(std::string("classification.winnow: ") + e.what());
    }
    try {
        cl.classifier.svm.validate();
    } catch (const std::exception& e) {
        v.push_back(std::string("classification.svm: ") + e.what());
    }
    if (!(cl.classifier.nb_smoothing >= 0.0)) v.push_back("classification.naive_bayes.smoothing: must be >= 0");
    const auto& t = c.topics;
    if (t.lda.topics < 1) v.push_back("topics.T: must be >= 1");
    if (!(t.lda.alpha > 0.0)) v.push_back("topics.alpha: must be > 0");
    if (!(t.lda.beta > 0.0)) v.push_back("topics.beta: must be > 0");
    if (!(t.threshold > 0.0 && t.threshold <= 1.0)) v.push_back("topics.threshold: must lie in (0, 1]");
    if (t.contrast_sample_size < 1) v.push_back("topics.contrast_sample_size: must be >= 1");
    for (const auto* sel : {&t.contrast_a, &t.contrast_b})
        if (!sel->label.empty() && !c.corpora.count(sel->label))
            v.push_back("topics.contrast: label \"" + sel->label + "\" is not a corpus label");
    const auto& co = c.coherence;
    if (!co.lexicon_path.empty() && !fs::is_regular_file(co.lexicon_path))
        v.push_back("coherence.lexicon: file does not exist: " + co.lexicon_path);
    if (!co.train_corpus_path.empty() && !fs::is_regular_file(co.train_corpus_path))
        v.push_back("coherence.train_corpus: file does not exist: " + co.train_corpus_path);
    if (co.history < 1 || co.history > EgridModel::kMaxHistory)
        v.push_back("coherence.h: must lie in [1, " + std::to_string(EgridModel::kMaxHistory) + "]");
    if (!(co.smoothing >= 0.0)) v.push_back("coherence.smoothing: must be >= 0");
    if (co.n_perm < 1) v.push_back("coherence.n_perm: must be >= 1");
    if (c.output_dir.empty()) v.push_back("output_dir: must not be empty");
    return v;
}

}  // namespace storyscope
