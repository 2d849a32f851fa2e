#pragma once

// Author-grouped k-fold cross-validation of the three classifiers.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/features.hpp"
#include "storyscope/metrics.hpp"
#include "storyscope/naive_bayes.hpp"
#include "storyscope/rng.hpp"
#include "storyscope/svm.hpp"
#include "storyscope/winnow.hpp"

namespace storyscope {

struct CvPlan {
    std::size_t k = 10;
    std::uint64_t seed = 0;
    std::map<std::string, std::size_t> fold_of_author;

    std::size_t fold_of(const Document& d) const {
        auto it = fold_of_author.find(d.author_id);
        if (it == fold_of_author.end())
            throw std::invalid_argument("author \"" + d.author_id + "\" of document \"" + d.id +
                                        "\" is not in the fold plan");
        return it->second;
    }
};

// Authors are shuffled with the seed, stably sorted by document count
// (descending) and each handed to the fold holding the fewest documents so
// far; equal folds resolve to the lowest index.
inline CvPlan make_author_folds(const Corpus& corpus, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("make_author_folds: k must be >= 2");
    std::vector<std::string> authors;
    std::unordered_map<std::string, std::size_t> docs_of;
    for (const auto& d : corpus)
        if (docs_of[d.author_id]++ == 0) authors.push_back(d.author_id);
    if (authors.size() < k)
        throw std::invalid_argument("make_author_folds: " + std::to_string(authors.size()) +
                                    " authors cannot fill " + std::to_string(k) +
                                    " folds; use a smaller k");
    Rng rng(seed);
    rng.shuffle(authors);
    std::stable_sort(authors.begin(), authors.end(), [&](const auto& a, const auto& b) {
        return docs_of[a] > docs_of[b];
    });
    CvPlan plan;
    plan.k = k;
    plan.seed = seed;
    std::vector<std::size_t> load(k, 0);
    for (const auto& a : authors) {
        const auto fold = static_cast<std::size_t>(
            std::min_element(load.begin(), load.end()) - load.begin());
        plan.fold_of_author[a] = fold;
        load[fold] += docs_of[a];
    }
    return plan;
}

enum class Algorithm { winnow, naive_bayes, svm };

inline std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::winnow: return "winnow";
        case Algorithm::naive_bayes: return "naive_bayes";
        case Algorithm::svm: return "svm";
    }
    return "unknown";
}

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "winnow" || s == "balanced_winnow") return Algorithm::winnow;
    if (s == "naive_bayes" || s == "nb") return Algorithm::naive_bayes;
    if (s == "svm") return Algorithm::svm;
    throw std::invalid_argument("unknown algorithm \"" + s + "\"");
}

using Model = std::variant<WinnowModel, NaiveBayesModel, SvmModel>;

inline Prediction predict(const Model& model, const FeatureVector& v) {
    return std::visit([&](const auto& m) { return m.predict(v); }, model);
}

inline const BinaryLabels& model_labels(const Model& model) {
    return std::visit([](const auto& m) -> const BinaryLabels& { return m.labels(); }, model);
}

struct ClassifierConfig {
    std::size_t k_features = 7500;
    std::size_t n_max = 3;
    Blocklist blocklist = Blocklist::dream_words();
    FrequencyMode frequency = FrequencyMode::corpus;
    WinnowParams winnow;
    double nb_smoothing = 1.0;
    SvmParams svm;
    std::string positive_label;  // empty: lexicographically smaller label
};

inline Model train_model(Algorithm algo, const std::vector<LabeledVector>& train,
                         std::size_t vocab_size, const ClassifierConfig& cfg) {
    switch (algo) {
        case Algorithm::winnow: return train_winnow(train, vocab_size, cfg.winnow, cfg.positive_label);
        case Algorithm::naive_bayes: return train_nb(train, vocab_size, cfg.nb_smoothing, cfg.positive_label);
        case Algorithm::svm: return train_svm(train, vocab_size, cfg.svm, cfg.positive_label);
    }
    throw std::logic_error("unreachable");
}

// Blocklist-filtered n-gram counts for every document, computed once and
// reused by all folds.
inline std::vector<NgramCounts> document_ngrams(const Corpus& corpus, const ClassifierConfig& cfg) {
    std::vector<NgramCounts> out;
    out.reserve(corpus.size());
    for (const auto& d : corpus) out.push_back(apply_blocklist(extract_ngrams(d, cfg.n_max), cfg.blocklist));
    return out;
}

struct TrainedClassifier {
    Vocabulary vocabulary;
    Model model;
};

// Vocabulary and model from the documents selected by `rows`, in corpus order.
inline TrainedClassifier fit_classifier(Algorithm algo, const Corpus& corpus,
                                        const std::vector<NgramCounts>& ngrams,
                                        const std::vector<std::size_t>& rows,
                                        const ClassifierConfig& cfg) {
    std::vector<const NgramCounts*> ptrs;
    for (auto r : rows) ptrs.push_back(&ngrams[r]);
    auto vocab = select_top_k_from_counts(aggregate_counts(ptrs, cfg.frequency), cfg.k_features).vocabulary;
    std::vector<LabeledVector> train;
    train.reserve(rows.size());
    for (auto r : rows) train.push_back({vectorize_counts(corpus[r].id, ngrams[r], vocab), corpus[r].label});
    auto model = train_model(algo, train, vocab.size(), cfg);
    return {std::move(vocab), std::move(model)};
}

inline TrainedClassifier fit_classifier(Algorithm algo, const Corpus& corpus, const ClassifierConfig& cfg) {
    auto ngrams = document_ngrams(corpus, cfg);
    std::vector<std::size_t> rows(corpus.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return fit_classifier(algo, corpus, ngrams, rows, cfg);
}

struct DocumentPrediction {
    std::string doc_id;
    std::string actual;
    Prediction prediction;
    std::size_t fold = 0;
};

struct CvResult {
    EvalReport report;
    std::vector<DocumentPrediction> predictions;  // corpus order
    BinaryLabels labels;
};

// Per fold: vocabulary selected on the training portion only, model trained
// on it in corpus order, held-out documents predicted. Predictions are pooled
// before computing metrics. Folds whose training part lacks a class are
// skipped and noted in the per-fold breakdown.
inline CvResult cross_validate(const Corpus& corpus, Algorithm algo, const CvPlan& plan,
                               const ClassifierConfig& cfg) {
    if (corpus.labels().size() != 2)
        throw std::invalid_argument("cross_validate: corpus must contain exactly two labels");
    std::vector<std::size_t> fold(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        fold[i] = plan.fold_of(corpus[i]);
        if (fold[i] >= plan.k) throw std::invalid_argument("cross_validate: fold index out of range");
    }
    const auto ngrams = document_ngrams(corpus, cfg);

    CvResult result;
    result.labels.names = {*corpus.labels().begin(), *std::next(corpus.labels().begin())};
    if (!cfg.positive_label.empty()) result.labels.positive = result.labels.index_of(cfg.positive_label);
    const std::string& positive = result.labels.positive_label();

    std::vector<std::optional<DocumentPrediction>> pooled(corpus.size());
    for (std::size_t f = 0; f < plan.k; ++f) {
        FoldReport fr;
        fr.fold = f;
        std::vector<std::size_t> train_rows, test_rows;
        std::set<std::string> train_labels;
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            if (fold[i] == f) {
                test_rows.push_back(i);
            } else {
                train_rows.push_back(i);
                train_labels.insert(corpus[i].label);
            }
        }
        fr.train_docs = train_rows.size();
        fr.test_docs = test_rows.size();
        if (train_labels.size() != 2) {
            fr.skipped = true;
            fr.note = "training portion has a single class";
            result.report.folds.push_back(fr);
            continue;
        }
        if (test_rows.empty()) {
            fr.note = "empty test fold";
            result.report.folds.push_back(fr);
            continue;
        }
        auto trained = fit_classifier(algo, corpus, ngrams, train_rows, cfg);
        fr.vocab_size = trained.vocabulary.size();
        for (auto r : test_rows) {
            auto v = vectorize_counts(corpus[r].id, ngrams[r], trained.vocabulary);
            auto p = predict(trained.model, v);
            const bool actual = corpus[r].label == positive;
            const bool predicted = p.label == positive;
            if (actual && predicted) ++fr.confusion.tp;
            else if (!actual && predicted) ++fr.confusion.fp;
            else if (actual) ++fr.confusion.fn;
            else ++fr.confusion.tn;
            pooled[r] = DocumentPrediction{corpus[r].id, corpus[r].label, std::move(p), f};
        }
        result.report.folds.push_back(fr);
    }

    std::vector<ScoredOutcome> outcomes;
    for (auto& p : pooled) {
        if (!p) continue;
        outcomes.push_back({p->prediction.score, p->actual == positive, p->prediction.label == positive});
        result.predictions.push_back(std::move(*p));
    }
    auto folds = std::move(result.report.folds);
    result.report = micro_metrics(outcomes);
    result.report.folds = std::move(folds);
    return result;
}

}  // namespace storyscope
