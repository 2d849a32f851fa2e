#pragma once

// End-to-end experiment driver: corpus preparation followed by the analysis
// stages, each writing one tab-separated report.
//
// Every report starts with a single "#" header line carrying the toolkit
// version, config hash, seed and stage (plus stage-specific settings such as
// the topic content filter). No timestamps are written, so identical
// configurations produce byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/config.hpp"
#include "storyscope/corpus.hpp"
#include "storyscope/cross_validation.hpp"
#include "storyscope/entity_grid.hpp"
#include "storyscope/markers.hpp"
#include "storyscope/model_io.hpp"
#include "storyscope/topics.hpp"

#ifndef STORYSCOPE_VERSION
#define STORYSCOPE_VERSION "0.1.0"
#endif

namespace storyscope {

inline constexpr const char* kVersion = STORYSCOPE_VERSION;

enum class Stage { stats, classify, topics, contrast, markers, egrid };

inline const std::vector<Stage>& all_stages() {
    static const std::vector<Stage> s{Stage::stats, Stage::classify, Stage::topics,
                                      Stage::contrast, Stage::markers, Stage::egrid};
    return s;
}

inline std::string stage_name(Stage s) {
    switch (s) {
        case Stage::stats: return "stats";
        case Stage::classify: return "classify";
        case Stage::topics: return "topics";
        case Stage::contrast: return "contrast";
        case Stage::markers: return "markers";
        case Stage::egrid: return "egrid";
    }
    return "?";
}

inline Stage parse_stage(const std::string& s) {
    for (auto st : all_stages())
        if (stage_name(st) == s) return st;
    throw std::invalid_argument("unknown stage \"" + s + "\"");
}

inline std::string report_file(Stage s) { return stage_name(s) + ".tsv"; }

class StageError : public std::runtime_error {
public:
    StageError(Stage stage, const std::string& what)
        : std::runtime_error(stage_name(stage) + ": " + what), stage_(stage) {}
    Stage stage() const { return stage_; }

private:
    Stage stage_;
};

namespace detail {

inline std::string fixed(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Writes to a sibling temporary file and renames on success, so a failing
// stage never leaves a half-written report behind.
inline void write_atomically(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        body(out);
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace detail

// The configuration hash covers everything except the output location.
inline std::string config_hash(const ExperimentConfig& c) {
    nlohmann::json j = c.source;
    if (j.is_object()) {
        j.erase("output_dir");
        j["seed"] = c.seed;
    }
    return detail::hex64(detail::fnv1a(j.dump()));
}

struct PreparedCorpus {
    std::map<std::string, Corpus> by_label;
    Corpus combined;  // all labels, seeded interleaving
    std::vector<std::string> log;
};

// Ingest, de-duplicate, language-filter, cap per author and downsample each
// labeled collection independently.
inline PreparedCorpus prepare_corpora(const ExperimentConfig& cfg) {
    PreparedCorpus p;
    const auto seed = static_cast<std::uint64_t>(cfg.seed);
    std::size_t label_index = 0;
    for (const auto& [label, path] : cfg.corpora) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open corpus " + path);
        auto ing = ingest_jsonl(in);
        for (const auto& e : ing.errors) p.log.push_back(path + ":" + std::to_string(e.line) + ": error: " + e.message);
        for (const auto& w : ing.warnings) p.log.push_back(path + ":" + std::to_string(w.line) + ": warning: " + w.message);
        std::vector<Document> matching;
        for (const auto& d : ing.corpus) {
            if (d.label == label) matching.push_back(d);
            else p.log.push_back(path + ": warning: document \"" + d.id + "\" has label \"" + d.label +
                                 "\", expected \"" + label + "\"; skipped");
        }
        Corpus c(std::move(matching));
        if (cfg.sampling.dedup) {
            auto r = dedup_exact(c);
            p.log.push_back(label + ": removed " + std::to_string(r.removed) + " duplicates");
            c = std::move(r.corpus);
        }
        {
            auto r = filter_english(c, cfg.sampling.english_threshold);
            p.log.push_back(label + ": removed " + std::to_string(r.removed) + " non-English documents");
            c = std::move(r.corpus);
        }
        if (cfg.sampling.per_author_cap > 0)
            c = cap_per_author(c, cfg.sampling.per_author_cap, derive_seed(seed, 2 * label_index));
        if (cfg.sampling.token_budget > 0) {
            auto r = downsample_to_tokens(c, cfg.sampling.token_budget, derive_seed(seed, 2 * label_index + 1));
            for (const auto& w : r.warnings) p.log.push_back(label + ": warning: " + w);
            c = std::move(r.corpus);
        }
        p.by_label.emplace(label, std::move(c));
        ++label_index;
    }
    // Online learners consume documents in corpus order, so the labels are
    // interleaved rather than left in contiguous blocks.
    std::vector<Document> all;
    for (const auto& [label, c] : p.by_label) all.insert(all.end(), c.begin(), c.end());
    Rng rng(derive_seed(seed, 2 * label_index));
    rng.shuffle(all);
    p.combined = Corpus(std::move(all));
    return p;
}

struct RunResult {
    int exit_code = 0;
    std::vector<std::string> written;
    std::vector<std::string> log;
    std::optional<Stage> failed_stage;
    std::string error;
};

class Pipeline {
public:
    explicit Pipeline(ExperimentConfig cfg) : cfg_(std::move(cfg)), hash_(config_hash(cfg_)) {}

    const ExperimentConfig& config() const { return cfg_; }

    std::string header(Stage s, const std::string& extra = {}) const {
        std::string h = "# storyscope " + std::string(kVersion) + "\tconfig_hash=" + hash_ +
                        "\tseed=" + std::to_string(cfg_.seed) + "\tstage=" + stage_name(s);
        if (!extra.empty()) h += "\t" + extra;
        return h + "\n";
    }

    const PreparedCorpus& prepared() {
        if (!prepared_) prepared_ = prepare_corpora(cfg_);
        return *prepared_;
    }

    // Writes the prepared corpora as JSONL (the `ingest` subcommand).
    std::vector<std::string> write_prepared() {
        std::filesystem::create_directories(cfg_.output_dir);
        std::vector<std::string> out;
        for (const auto& [label, c] : prepared().by_label) {
            auto path = std::filesystem::path(cfg_.output_dir) / ("corpus_" + label + ".jsonl");
            detail::write_atomically(path, [&](std::ostream& os) { write_jsonl(os, c); });
            out.push_back(path.string());
        }
        auto log_path = std::filesystem::path(cfg_.output_dir) / "ingest.log";
        detail::write_atomically(log_path, [&](std::ostream& os) {
            for (const auto& l : prepared().log) os << l << '\n';
        });
        out.push_back(log_path.string());
        return out;
    }

    // Runs the requested stages in dependency order and stops at the first
    // failure; reports of stages that already finished stay in place.
    RunResult run(const std::set<Stage>& stages) {
        RunResult r;
        std::filesystem::create_directories(cfg_.output_dir);
        for (auto s : all_stages()) {
            if (!stages.count(s)) continue;
            try {
                auto files = run_stage(s);
                r.written.insert(r.written.end(), files.begin(), files.end());
            } catch (const std::exception& e) {
                r.exit_code = 3;
                r.failed_stage = s;
                r.error = stage_name(s) + ": " + e.what();
                break;
            }
        }
        if (prepared_) r.log = prepared_->log;
        return r;
    }

    std::vector<std::string> run_stage(Stage s) {
        switch (s) {
            case Stage::stats: return stage_stats();
            case Stage::classify: return stage_classify();
            case Stage::topics: return stage_topics();
            case Stage::contrast: return stage_contrast();
            case Stage::markers: return stage_markers();
            case Stage::egrid: return stage_egrid();
        }
        return {};
    }

private:
    std::filesystem::path out_path(const std::string& name) const {
        return std::filesystem::path(cfg_.output_dir) / name;
    }

    std::vector<std::string> stage_stats() {
        const auto& p = prepared();
        auto path = out_path(report_file(Stage::stats));
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::stats);
            os << "label\tdoc_count\ttotal_tokens\tmean_len\tpop_stddev\n";
            auto row = [&](const std::string& label, const Corpus& c) {
                const auto st = corpus_stats(c);
                os << label << '\t' << st.doc_count << '\t' << st.total_tokens << '\t'
                   << detail::fixed(st.mean_doc_len) << '\t' << detail::fixed(st.pop_stddev_doc_len) << '\n';
            };
            for (const auto& [label, c] : p.by_label) row(label, c);
            row("all", p.combined);
        });
        return {path.string()};
    }

    ClassifierConfig classifier_config() const {
        ClassifierConfig cc = cfg_.classification.classifier;
        if (!cfg_.classification.blocklist_path.empty())
            cc.blocklist = Blocklist::from_text(read_file(cfg_.classification.blocklist_path));
        return cc;
    }

    std::vector<std::string> stage_classify() {
        const auto& corpus = prepared().combined;
        if (corpus.labels().size() != 2) throw std::runtime_error("classification needs exactly two labels");
        const auto cc = classifier_config();
        const auto seed = static_cast<std::uint64_t>(cfg_.seed);
        const auto plan = make_author_folds(corpus, cfg_.classification.folds, seed);
        std::vector<std::pair<Algorithm, CvResult>> results;
        for (auto algo : cfg_.classification.algorithms) results.emplace_back(algo, cross_validate(corpus, algo, plan, cc));

        std::vector<std::string> files;
        auto path = out_path(report_file(Stage::classify));
        const std::string extra = "folds=" + std::to_string(plan.k) + "\tk_features=" + std::to_string(cc.k_features) +
                                  "\tpositive=" + results.front().second.labels.positive_label();
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::classify, extra);
            os << "algorithm\tprecision\trecall\tf1\ttpr\tfpr\tauc\tn_correct\n";
            for (const auto& [algo, res] : results) {
                const auto& m = res.report;
                os << algorithm_name(algo) << '\t' << detail::fixed(m.precision) << '\t' << detail::fixed(m.recall)
                   << '\t' << detail::fixed(m.f1) << '\t' << detail::fixed(m.tpr) << '\t' << detail::fixed(m.fpr)
                   << '\t' << (m.auc_defined ? detail::fixed(m.auc) : std::string("NA")) << '\t' << m.n_correct
                   << '\n';
            }
        });
        files.push_back(path.string());

        auto folds_path = out_path("classify_folds.tsv");
        detail::write_atomically(folds_path, [&](std::ostream& os) {
            os << header(Stage::classify, extra);
            os << "algorithm\tfold\ttrain_docs\ttest_docs\tvocab_size\ttp\tfp\tfn\ttn\tnote\n";
            for (const auto& [algo, res] : results)
                for (const auto& f : res.report.folds)
                    os << algorithm_name(algo) << '\t' << f.fold << '\t' << f.train_docs << '\t' << f.test_docs << '\t'
                       << f.vocab_size << '\t' << f.confusion.tp << '\t' << f.confusion.fp << '\t' << f.confusion.fn
                       << '\t' << f.confusion.tn << '\t' << (f.note.empty() ? "-" : f.note) << '\n';
        });
        files.push_back(folds_path.string());

        // Feature introspection uses a Winnow model trained on the whole corpus.
        auto winnow = fit_classifier(Algorithm::winnow, corpus, cc);
        const auto& wm = std::get<WinnowModel>(winnow.model);
        auto top_path = out_path("top_features.tsv");
        detail::write_atomically(top_path, [&](std::ostream& os) {
            os << header(Stage::classify, extra);
            os << "class\trank\tngram\tnet_weight\n";
            for (std::size_t c = 0; c < 2; ++c)
                for (const auto& rf : wm.top_features(c, cfg_.classification.top_features))
                    os << wm.labels().names[c] << '\t' << rf.rank << '\t'
                       << ngram_string(winnow.vocabulary.entry(rf.feature)) << '\t' << detail::fixed(rf.net_weight)
                       << '\n';
        });
        files.push_back(top_path.string());

        if (cfg_.classification.save_models) {
            std::filesystem::create_directories(out_path("models"));
            for (auto algo : cfg_.classification.algorithms) {
                const auto tc = fit_classifier(algo, corpus, cc);
                auto mp = out_path("models") / (algorithm_name(algo) + ".model");
                detail::write_atomically(mp, [&](std::ostream& os) { save_classifier(os, tc); });
                files.push_back(mp.string());
            }
        }
        return files;
    }

    const TopicModel& topic_model() {
        if (!topic_model_) {
            auto params = cfg_.topics.lda;
            params.seed = static_cast<std::uint64_t>(cfg_.seed);
            topic_model_ = fit_lda(lda_documents(prepared().combined, cfg_.topics.filter), params);
        }
        return *topic_model_;
    }

    std::string topic_extra() const {
        return "filter_mode=" + content_mode_name(cfg_.topics.filter) + "\tT=" + std::to_string(cfg_.topics.lda.topics) +
               "\titerations=" + std::to_string(cfg_.topics.lda.iterations);
    }

    std::vector<std::string> stage_topics() {
        const auto& m = topic_model();
        std::vector<std::string> files;
        auto path = out_path(report_file(Stage::topics));
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::topics, topic_extra());
            os << "topic_id\trank\tword\tphi\n";
            const auto& vocab = m.vocabulary();
            for (std::size_t t = 0; t < m.topics(); ++t) {
                const auto phi = m.phi(t);
                const auto words = top_words(m, t, 10);
                for (std::size_t r = 0; r < words.size(); ++r) {
                    const auto w = static_cast<std::size_t>(std::lower_bound(vocab.begin(), vocab.end(), words[r]) - vocab.begin());
                    os << t << '\t' << r + 1 << '\t' << words[r] << '\t' << detail::fixed(phi[w]) << '\n';
                }
            }
        });
        files.push_back(path.string());

        auto ann_path = out_path("annotations.tsv");
        detail::write_atomically(ann_path, [&](std::ostream& os) {
            os << header(Stage::topics, topic_extra() + "\tthreshold=" + detail::fixed(cfg_.topics.threshold, 2));
            os << "doc_id\ttopic_id\ttheta\n";
            for (const auto& a : annotate_all(m, cfg_.topics.threshold))
                for (std::size_t i = 0; i < a.topics.size(); ++i)
                    os << a.doc_id << '\t' << a.topics[i] << '\t' << detail::fixed(a.proportions[i]) << '\n';
        });
        files.push_back(ann_path.string());

        auto model_path = out_path("topics.model");
        detail::write_atomically(model_path, [&](std::ostream& os) { m.save(os); });
        files.push_back(model_path.string());
        return files;
    }

    std::vector<std::string> sample_ids(const SampleSelector& sel, const std::string& fallback_label,
                                        std::uint64_t seed, const std::set<std::string>& excluded) {
        const std::string label = sel.label.empty() ? fallback_label : sel.label;
        std::vector<std::string> ids;
        for (const auto& d : prepared().combined)
            if (d.label == label && (sel.source.empty() || d.source == sel.source) && !excluded.count(d.id))
                ids.push_back(d.id);
        Rng rng(seed);
        rng.shuffle(ids);
        if (ids.size() > cfg_.topics.contrast_sample_size) ids.resize(cfg_.topics.contrast_sample_size);
        return ids;
    }

    std::vector<std::string> stage_contrast() {
        const auto& m = topic_model();
        const auto& labels = prepared().combined.labels();
        if (labels.empty()) throw std::runtime_error("no documents to contrast");
        const std::string first = *labels.begin();
        const std::string second = labels.size() > 1 ? *std::next(labels.begin()) : first;
        const std::set<std::string> excluded(m.excluded_docs().begin(), m.excluded_docs().end());
        const auto seed = static_cast<std::uint64_t>(cfg_.seed);
        auto a = sample_ids(cfg_.topics.contrast_a, first, derive_seed(seed, 101), excluded);
        auto b = sample_ids(cfg_.topics.contrast_b, second, derive_seed(seed, 102), excluded);
        const auto name_a = cfg_.topics.contrast_a.label.empty() ? first : cfg_.topics.contrast_a.label;
        const auto name_b = cfg_.topics.contrast_b.label.empty() ? second : cfg_.topics.contrast_b.label;
        const auto results = contrast_samples(annotate_all(m, cfg_.topics.threshold), a, b, m.topics());
        std::size_t significant = 0;
        for (const auto& r : results) significant += r.significant ? 1 : 0;
        auto path = out_path(report_file(Stage::contrast));
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::contrast, topic_extra() + "\tsample_a=" + name_a + "\tsample_b=" + name_b +
                                              "\tsignificant=" + std::to_string(significant) + "/" +
                                              std::to_string(results.size()));
            os << "topic_id\tcount_a\tcount_b\tn_a\tn_b\tG\tsignificant\tdirection\ttop_words\n";
            for (const auto& r : results)
                os << r.topic << '\t' << r.count_a << '\t' << r.count_b << '\t' << r.n_a << '\t' << r.n_b << '\t'
                   << detail::fixed(r.g) << '\t' << (r.significant ? "yes" : "no") << '\t'
                   << direction_name(r.direction, name_a, name_b) << '\t' << join(top_words(m, r.topic, 10), "_")
                   << '\n';
        });
        return {path.string()};
    }

    MarkerLexicon lexicon() const {
        if (cfg_.coherence.lexicon_path.empty()) return MarkerLexicon::bundled();
        return MarkerLexicon::parse(read_file(cfg_.coherence.lexicon_path));
    }

    std::vector<std::string> stage_markers() {
        const auto lex = lexicon();
        auto path = out_path(report_file(Stage::markers));
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::markers, "connectives=" + std::to_string(lex.size()));
            os << "corpus\tconnective\tcount\trate_per_10k\n";
            for (const auto& [label, c] : prepared().by_label) {
                const auto prof = count_markers(c, lex, label);
                for (std::size_t i = 0; i < prof.connectives.size(); ++i)
                    os << label << '\t' << prof.connectives[i] << '\t' << prof.counts[i] << '\t'
                       << detail::fixed(prof.rate_per_10k(i), 4) << '\n';
                const double total_rate = prof.corpus_tokens ? 10000.0 * static_cast<double>(prof.total) /
                                                                   static_cast<double>(prof.corpus_tokens)
                                                             : 0.0;
                os << label << '\t' << "TOTAL" << '\t' << prof.total << '\t' << detail::fixed(total_rate, 4) << '\n';
            }
        });
        return {path.string()};
    }

    std::vector<std::string> stage_egrid() {
        const auto& co = cfg_.coherence;
        const auto seed = static_cast<std::uint64_t>(cfg_.seed);
        std::optional<EgridModel> external;
        if (!co.train_corpus_path.empty()) {
            std::ifstream in(co.train_corpus_path);
            auto ing = ingest_jsonl(in);
            std::vector<EntityGrid> grids;
            for (const auto& d : ing.corpus) grids.push_back(build_entity_grid(d));
            external = train_egrid(grids, co.history, co.smoothing);
        }
        auto path = out_path(report_file(Stage::egrid));
        std::ostringstream body;
        body << "corpus\tdocs\tpairs\twins\tties\tlosses\taccuracy\tf_score\n";
        std::size_t label_index = 0;
        for (const auto& [label, c] : prepared().by_label) {
            // Default protocol: a seeded half of the label trains the model,
            // the other half is tested.
            std::vector<std::size_t> order(c.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            Rng rng(derive_seed(seed, 200 + label_index));
            rng.shuffle(order);
            const std::size_t half = external ? 0 : c.size() / 2;
            std::vector<Document> train_docs, test_docs;
            for (std::size_t k = 0; k < order.size(); ++k)
                (k < half ? train_docs : test_docs).push_back(c[order[k]]);
            if (co.max_test_docs && test_docs.size() > co.max_test_docs) test_docs.resize(co.max_test_docs);
            std::optional<EgridModel> local;
            if (!external) {
                std::vector<EntityGrid> grids;
                for (const auto& d : train_docs) grids.push_back(build_entity_grid(d));
                local = train_egrid(grids, co.history, co.smoothing);
            }
            const EgridModel& model = external ? *external : *local;
            const auto outcomes = discriminate_corpus(model, Corpus(std::move(test_docs)), co.n_perm,
                                                      derive_seed(seed, 300 + label_index));
            const auto rep = discrimination_report(outcomes);
            body << label << '\t' << rep.docs << '\t' << rep.pairs() << '\t' << rep.wins << '\t' << rep.ties << '\t'
                 << rep.losses << '\t' << detail::fixed(rep.accuracy) << '\t'
                 << (rep.f_defined ? detail::fixed(rep.f_score) : std::string("NA")) << '\n';
            ++label_index;
        }
        detail::write_atomically(path, [&](std::ostream& os) {
            os << header(Stage::egrid, "h=" + std::to_string(co.history) + "\tn_perm=" + std::to_string(co.n_perm) +
                                           "\ttrain=" + (external ? "external" : "held_out_half"));
            os << body.str();
        });
        return {path.string()};
    }

    ExperimentConfig cfg_;
    std::string hash_;
    std::optional<PreparedCorpus> prepared_;
    std::optional<TopicModel> topic_model_;
};

}  // namespace storyscope
