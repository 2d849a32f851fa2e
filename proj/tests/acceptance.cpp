// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "storyscope.hpp"
#include "marker_cases.hpp"
#include "oracles.hpp"

using namespace storyscope;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

FeatureVector fv(std::vector<FeatureIndex> active) { return {"d", std::move(active)}; }
LabeledVector ex(std::vector<FeatureIndex> active, std::string label) { return {fv(std::move(active)), std::move(label)}; }

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

Verdict classifier_oracles() {
    Verdict v;
    Rng rng(2024);
    std::size_t cases = 0, predictions = 0;
    while (cases < 60) {
        const std::size_t V = 1 + rng.index(5);
        const std::size_t n = 2 + rng.index(4);
        std::vector<LabeledVector> train;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<FeatureIndex> act;
            for (FeatureIndex f = 0; f < V; ++f)
                if (rng.index(2)) act.push_back(f);
            train.push_back(ex(act, rng.index(2) ? "pos" : "neg"));
        }
        std::set<std::string> labels;
        for (const auto& e : train) labels.insert(e.label);
        if (labels.size() != 2) continue;
        ++cases;
        auto m = train_nb(train, V);
        for (std::size_t mask = 0; mask < (1u << V); ++mask) {
            std::vector<FeatureIndex> act;
            for (FeatureIndex f = 0; f < V; ++f)
                if (mask & (1u << f)) act.push_back(f);
            ++predictions;
            v.require(m.predict(fv(act)).label == oracle::naive_bayes(train, V, fv(act), m.labels().names),
                      "naive bayes disagrees with the exact oracle");
        }
    }

    const std::vector<std::pair<std::vector<FeatureIndex>, int>> script{
        {{0, 1, 2}, 0}, {{1, 3}, 1}, {{0, 2, 4}, 0}, {{3, 4}, 1}, {{0}, 0},
        {{1, 2, 3, 4}, 1}, {{0, 1}, 0}, {{2}, 1}, {{0, 3}, 0}, {{4, 1}, 1}};
    WinnowModel w(BinaryLabels{{"a", "b"}, 0}, 5, {});
    oracle::Winnow ref;
    for (const auto& [active, truth] : script) {
        w.learn(fv(active), truth == 0 ? "a" : "b");
        ref.learn(fv(active), truth);
    }
    double worst = 0.0;
    for (int c = 0; c < 2; ++c)
        for (FeatureIndex f = 0; f < 5; ++f) {
            const auto& wt = w.weight(static_cast<std::size_t>(c), f);
            if (!wt.touched) continue;
            worst = std::max({worst, std::abs(wt.plus - ref.plus(c, f)), std::abs(wt.minus - ref.minus(c, f))});
        }
    v.require(worst <= 1e-12, "winnow trace off by " + std::to_string(worst));

    Rng srng(19);
    double svm_gap = 0.0;
    for (int rep = 0; rep < 12; ++rep) {
        const std::size_t d = 1 + srng.index(3);
        const std::size_t n = 3 + srng.index(4);
        std::vector<LabeledVector> train;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<FeatureIndex> act;
            for (FeatureIndex f = 0; f < d; ++f)
                if (srng.index(2)) act.push_back(f);
            train.push_back(ex(act, i == 0 ? "a" : (i == 1 ? "b" : (srng.index(2) ? "a" : "b"))));
        }
        auto m = train_svm(train, d);
        std::vector<FeatureVector> xs;
        std::vector<int> ys;
        for (const auto& e : train) {
            xs.push_back(e.x);
            ys.push_back(e.label == m.labels().positive_label() ? 1 : -1);
        }
        svm_gap = std::max(svm_gap, std::abs(svm_primal_objective(m, train) - oracle::svm_grid_minimum(d, 1.0, xs, ys)));
    }
    v.require(svm_gap <= 1e-2, "svm objective gap " + std::to_string(svm_gap));
    if (v.ok)
        v.detail = std::to_string(cases) + " NB corpora / " + std::to_string(predictions) +
                   " predictions exact; winnow max error " + std::to_string(worst) + "; svm max gap " + fmt(svm_gap, 5);
    return v;
}

Verdict planted_classification() {
    Verdict v;
    synthetic::ClassificationSpec spec;  // 400 docs / 20 authors per genre
    auto corpus = synthetic::classification_corpus(spec, 7);
    auto plan = make_author_folds(corpus, 10, 1);
    ClassifierConfig cfg;
    cfg.k_features = 500;
    std::string detail;
    for (auto algo : {Algorithm::svm, Algorithm::winnow, Algorithm::naive_bayes}) {
        auto r = cross_validate(corpus, algo, plan, cfg);
        v.require(r.report.f1 >= 0.95, algorithm_name(algo) + " F1 " + fmt(r.report.f1));
        detail += algorithm_name(algo) + " F1 " + fmt(r.report.f1) + "; ";
    }
    auto winnow = fit_classifier(Algorithm::winnow, corpus, cfg);
    const auto& wm = std::get<WinnowModel>(winnow.model);
    for (std::size_t c = 0; c < 2; ++c) {
        const auto& name = wm.labels().names[c];
        const auto& planted = name == spec.genre_a ? synthetic::uncertainty_markers() : synthetic::date_markers();
        std::size_t hits = 0;
        for (const auto& rf : wm.top_features(c, 30)) {
            const auto g = ngram_string(winnow.vocabulary.entry(rf.feature));
            hits += std::find(planted.begin(), planted.end(), g) != planted.end();
        }
        v.require(hits >= 5, name + ": only " + std::to_string(hits) + " planted markers in the top 30");
        detail += name + " top-30 markers " + std::to_string(hits) + "; ";
    }
    if (v.ok) v.detail = detail.substr(0, detail.size() - 2);
    return v;
}

Verdict auc_exact() {
    Verdict v;
    Rng rng(1234);
    std::size_t tie_heavy = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 2 + rng.index(60);
        const bool ties = rep % 2 == 1;
        const std::size_t levels = ties ? 1 + rng.index(4) : 1000000;
        tie_heavy += ties;
        std::vector<std::pair<double, bool>> s;
        for (std::size_t i = 0; i < n; ++i)
            s.emplace_back(static_cast<double>(rng.index(levels)) / 7.0, rng.index(2) == 1);
        s[0].second = true;
        s[1].second = false;
        v.require(auc(s) == oracle::auc_pairs(s), "auc mismatch on set " + std::to_string(rep));
    }
    if (v.ok) v.detail = "1000 sets (" + std::to_string(tie_heavy) + " tie-heavy) equal brute force exactly";
    return v;
}

LdaParams lda_params(std::size_t T, std::size_t iters, std::uint64_t seed) {
    LdaParams p;
    p.topics = T;
    p.iterations = iters;
    p.alpha = 5.0 / static_cast<double>(T);
    p.seed = seed;
    return p;
}

Verdict lda() {
    Verdict v;
    auto small = synthetic::planted_topic_corpus(99, 50, 40, 3, 20);
    std::size_t sweeps = 0;
    bool consistent = true;
    auto m = fit_lda(small.docs, lda_params(5, 100, 3), [&](const TopicModel& tm) {
        consistent = consistent && tm.counts_consistent();
        ++sweeps;
    });
    v.require(consistent && sweeps == 100, "count tables diverged from assignments");
    double worst = 0.0;
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        double s = 0.0;
        for (double x : m.theta(d)) s += x;
        worst = std::max(worst, std::abs(s - 1.0));
    }
    for (std::size_t t = 0; t < m.topics(); ++t) {
        double s = 0.0;
        for (double x : m.phi(t)) s += x;
        worst = std::max(worst, std::abs(s - 1.0));
    }
    v.require(worst <= 1e-9, "normalization error " + std::to_string(worst));

    std::size_t recovered = 0;
    std::string scores;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto planted = synthetic::planted_topic_corpus(seed);
        auto fitted = fit_lda(planted.docs, lda_params(3, 500, seed));
        std::vector<std::vector<std::string>> top;
        for (std::size_t t = 0; t < 3; ++t) top.push_back(top_words(fitted, t, 10));
        const double r = oracle::greedy_topic_recovery(top, planted.topic_words);
        recovered += r >= 0.8;
        scores += (scores.empty() ? "" : " ") + fmt(r, 2);
    }
    v.require(recovered >= 4, "recovery reached 0.8 for only " + std::to_string(recovered) + "/5 seeds");
    if (v.ok)
        v.detail = "consistent over " + std::to_string(sweeps) + " sweeps; normalization error " + fmt(worst, 12) +
                   "; recovery per seed " + scores;
    return v;
}

Verdict g_test_criterion() {
    using Big = boost::multiprecision::cpp_dec_float_50;
    Verdict v;
    Rng rng(5150);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto na = 1 + rng.index(20000), nb = 1 + rng.index(20000);
        const auto a = rng.index(na + 1), b = rng.index(nb + 1);
        const Big A(a), B(b), NA(na), NB(nb);
        Big g = 0;
        if (a) g += A * boost::multiprecision::log(A / (NA * (A + B) / (NA + NB)));
        if (b) g += B * boost::multiprecision::log(B / (NB * (A + B) / (NA + NB)));
        const double ref = static_cast<double>(2 * g);
        const double got = g_test(a, b, na, nb).g;
        if (ref > 1e-9) worst = std::max(worst, std::abs(got - ref) / ref);
        else v.require(got <= 1e-6, "near-null case off");
    }
    v.require(worst <= 1e-6, "relative error " + std::to_string(worst));
    for (std::uint64_t k = 1; k <= 50; ++k) v.require(g_test(k, 2 * k, 100, 200).g == 0.0, "equal proportions not 0");
    const auto ex = g_test(30, 10, 100, 100);
    v.require(std::abs(ex.g - 10.4650) < 5e-5 && ex.significant, "worked example G " + fmt(ex.g, 6));
    for (std::uint64_t a = 0; a <= 200; ++a) {
        const auto r = g_test(a, 60, 200, 200);
        v.require(r.significant == (r.g > 3.841), "threshold is not strictly G > 3.841");
    }
    if (v.ok) v.detail = "max relative error " + sci(worst) + "; worked example G = " + fmt(ex.g, 4);
    return v;
}

Verdict markers() {
    Verdict v;
    const auto& lex = MarkerLexicon::bundled();
    const auto& cases = marker_cases();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto p = count_markers(Corpus({case_document("c", cases[i].text)}), lex);
        for (std::size_t k = 0; k < p.connectives.size(); ++k) {
            auto it = cases[i].expected.find(p.connectives[k]);
            const std::size_t want = it == cases[i].expected.end() ? 0 : it->second;
            v.require(p.counts[k] == want, "case " + std::to_string(i) + " (" + cases[i].text + "): " +
                                               p.connectives[k] + " counted " + std::to_string(p.counts[k]));
        }
    }
    v.require(cases.size() == 30, "fixture size");
    static const std::vector<std::string> vocab{"as", "soon", "if", "then", "even", "though", "in", "fact", "so",
                                                "that", "but", "and", "the", "dog", "For", "example", "THEN"};
    Rng rng(8);
    for (int c = 0; c < 200; ++c) {
        std::vector<Document> docs;
        const std::size_t nd = rng.index(20);
        for (std::size_t i = 0; i < nd; ++i) {
            Document d;
            d.id = "r" + std::to_string(i);
            for (std::size_t s = rng.index(4); s > 0; --s) {
                Sentence sent;
                for (std::size_t t = 1 + rng.index(12); t > 0; --t) sent.push_back(vocab[rng.index(vocab.size())]);
                d.sentences.push_back(sent);
            }
            d.recount();
            docs.push_back(d);
        }
        auto p = count_markers(Corpus(std::move(docs)), lex);
        std::size_t by_doc = 0, by_conn = 0;
        for (const auto& [id, n] : p.per_document_totals) by_doc += n;
        for (auto n : p.counts) by_conn += n;
        v.require(p.total == by_doc && p.total == by_conn, "corpus total differs from the per-document sum");
    }
    if (v.ok) v.detail = "30 crafted cases exact; totals conserved on 200 random corpora";
    return v;
}

Verdict egrid() {
    Verdict v;
    std::vector<EntityGrid> grids;
    for (const auto& d : synthetic::coherent_corpus(101, 150)) grids.push_back(build_entity_grid(d));
    auto model = train_egrid(grids, 2, 1.0);

    auto shorts = synthetic::coherent_corpus(55, 100, 1, 4);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < shorts.size(); ++i) {
        const auto& doc = shorts[i];
        auto all = oracle::all_order_scores(model, doc);
        std::vector<std::size_t> id(doc.sentences.size());
        for (std::size_t k = 0; k < id.size(); ++k) id[k] = k;
        const double orig = all.at(id);
        auto o = discrimination_test(model, doc, 20, derive_seed(3, i));
        std::size_t w = 0, t = 0, l = 0;
        for (std::size_t k = 0; k < o.permutations.size(); ++k) {
            const double ref = all.at(o.permutations[k]);
            v.require(std::abs(o.permuted_scores[k] - ref) <= 1e-12 * std::max(1.0, std::abs(ref)),
                      "sampled score differs from the exhaustive scorer");
            if (std::abs(orig - ref) <= 1e-12) ++t;
            else if (orig > ref) ++w;
            else ++l;
            ++checked;
        }
        v.require(o.wins == w && o.ties == t && o.losses == l, "outcome differs from the exhaustive scorer");
    }

    auto test = synthetic::coherent_corpus(202, 200);
    auto coherent = discrimination_report(discriminate_corpus(model, test, 20, 1));
    auto shuffled = discrimination_report(discriminate_corpus(model, synthetic::scrambled(test, 9), 20, 1));
    v.require(coherent.accuracy >= 0.8, "coherent accuracy " + fmt(coherent.accuracy));
    v.require(shuffled.accuracy >= 0.35 && shuffled.accuracy <= 0.65, "scrambled accuracy " + fmt(shuffled.accuracy));

    auto one = discrimination_test(model, Document::from_text("s", "a", "x", "s", "the dog barked."), 20, 4);
    v.require(one.wins == 0 && one.ties == 20 && one.losses == 0, "one-sentence document not 0/20/0");
    if (v.ok)
        v.detail = std::to_string(checked) + " sampled permutations match exhaustive orders; coherent accuracy " +
                   fmt(coherent.accuracy) + ", scrambled " + fmt(shuffled.accuracy) + "; 1-sentence 0/20/0";
    return v;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict determinism() {
    Verdict v;
    const auto config = fs::path(STORYSCOPE_DATA_DIR) / "synthetic" / "experiment.json";
    const auto root = fs::temp_directory_path() / "storyscope_acceptance";
    fs::remove_all(root);
    for (const char* run : {"first", "second"}) {
        const std::string cmd = std::string(STORYSCOPE_CLI) + " run-all --config " + config.string() + " --out " +
                                (root / run).string() + " >/dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        v.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("run-all failed on the ") + run + " run");
    }
    std::size_t files = 0;
    if (v.ok) {
        for (const auto& e : fs::recursive_directory_iterator(root / "first")) {
            if (!e.is_regular_file()) continue;
            const auto rel = fs::relative(e.path(), root / "first");
            v.require(fs::exists(root / "second" / rel) && slurp(e.path()) == slurp(root / "second" / rel),
                      rel.string() + " differs between runs");
            ++files;
        }
        v.require(files >= 6, "fewer than six reports written");
    }
    if (v.ok) v.detail = std::to_string(files) + " files byte-identical across two run-all invocations";
    return v;
}

Verdict sampling() {
    Verdict v;
    Rng rng(424242);
    for (int c = 0; c < 1000; ++c) {
        std::vector<Document> docs;
        const std::size_t n = rng.index(60);
        const std::size_t authors = 1 + rng.index(8);
        for (std::size_t i = 0; i < n; ++i) {
            Document d;
            d.id = "d" + std::to_string(i);
            d.author_id = "a" + std::to_string(rng.index(authors));
            d.label = "x";
            const std::size_t len = 1 + rng.index(120);
            d.sentences.push_back(Sentence(len, "w"));
            d.recount();
            docs.push_back(d);
        }
        Corpus corpus(std::move(docs));
        const std::size_t budget = 1 + rng.index(3000);
        auto r = downsample_to_tokens(corpus, budget, derive_seed(7, c));
        v.require(r.corpus.total_tokens() <= budget, "downsample exceeded the budget");
        const std::size_t cap = 1 + rng.index(6);
        auto capped = cap_per_author(corpus, cap, derive_seed(9, c));
        std::map<std::string, std::size_t> per;
        for (const auto& d : capped) ++per[d.author_id];
        for (const auto& [a, k] : per) v.require(k <= cap, "author cap exceeded");

        if (corpus.size() > 0) {
            double mean = 0.0;
            for (const auto& d : corpus) mean += static_cast<double>(d.token_count);
            mean /= static_cast<double>(corpus.size());
            double var = 0.0;
            for (const auto& d : corpus) var += (d.token_count - mean) * (d.token_count - mean);
            const double sd = std::sqrt(var / static_cast<double>(corpus.size()));
            v.require(std::abs(corpus_stats(corpus).pop_stddev_doc_len - sd) <= 1e-9, "population stddev mismatch");
        }
    }
    if (v.ok) v.detail = "1000 random corpora: budget and cap respected, stddev within 1e-9";
    return v;
}

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;  // 0: no limit
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "classifier oracles", 10, classifier_oracles},
        {2, "planted-signal classification", 60, planted_classification},
        {3, "auc exactness", 0, auc_exact},
        {4, "lda consistency and recovery", 120, lda},
        {5, "g-test", 0, g_test_criterion},
        {6, "marker counting", 0, markers},
        {7, "entity-grid discrimination", 30, egrid},
        {8, "run-all determinism", 0, determinism},
        {9, "corpus sampling", 0, sampling},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (v.ok && c.limit_seconds > 0 && secs >= c.limit_seconds) {
            v.ok = false;
            v.detail = "took " + fmt(secs, 1) + " s, limit " + fmt(c.limit_seconds, 0) + " s";
        }
        failures += !v.ok;
        std::cout << (v.ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << " (" << fmt(secs, 2) << " s)"
                  << (c.limit_seconds > 0 ? " limit " + fmt(c.limit_seconds, 0) + " s" : std::string()) << ": "
                  << v.detail << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
