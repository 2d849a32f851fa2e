#include <catch_amalgamated.hpp>

#include <cmath>

#include "storyscope/entity_grid.hpp"
#include "storyscope/markers.hpp"
#include "storyscope/synthetic.hpp"
#include "marker_cases.hpp"
#include "oracles.hpp"

using namespace storyscope;
using R = Role;

namespace {

Corpus one_doc(const std::string& text) { return Corpus({Document::from_text("d", "a", "x", "s", text)}); }

EntityGrid grid_of(std::vector<std::vector<Role>> rows) {
    EntityGrid g;
    g.sentences = rows.empty() ? 0 : rows.front().size();
    for (std::size_t i = 0; i < rows.size(); ++i) g.entities.push_back("e" + std::to_string(i));
    g.rows = std::move(rows);
    return g;
}

Corpus random_marker_corpus(std::uint64_t seed, std::size_t docs) {
    static const std::vector<std::string> vocab{"as",   "soon", "if",  "then", "even", "though", "in",  "fact",
                                                "so",   "that", "but", "and",  "the",  "dog",    "For", "example",
                                                "long", "a",    "result", "now", "THEN", "Though"};
    Rng rng(seed);
    std::vector<Document> out;
    for (std::size_t i = 0; i < docs; ++i) {
        Document d;
        d.id = "r" + std::to_string(i);
        const std::size_t ns = rng.index(4);
        for (std::size_t s = 0; s < ns; ++s) {
            Sentence sent;
            const std::size_t nt = 1 + rng.index(15);
            for (std::size_t t = 0; t < nt; ++t) sent.push_back(vocab[rng.index(vocab.size())]);
            d.sentences.push_back(sent);
        }
        d.recount();
        out.push_back(d);
    }
    return Corpus(std::move(out));
}

}  // namespace

TEST_CASE("bundled lexicon") {
    const auto& lex = MarkerLexicon::bundled();
    CHECK(lex.size() == 60);
    CHECK_FALSE(lex.find({"and"}));
    CHECK(lex.excluded() == std::vector<std::string>{"and"});
    for (const auto& c : lex.entries()) {
        CHECK(c.tokens.size() >= 1);
        CHECK(c.tokens.size() <= 3);
    }
    CHECK(lex.find({"even", "though"}));
    auto parsed = MarkerLexicon::parse("# test\nand\nAND\nbut\n#@frequent\nso that\n");
    CHECK(parsed.size() == 2);
    CHECK_FALSE(parsed.find({"and"}));
    CHECK(parsed.entries()[1].frequent);
    CHECK_THROWS_AS(MarkerLexicon().add({"a", "b", "c", "d"}), std::invalid_argument);
}

TEST_CASE("marker counting worked example") {
    auto p = count_markers(one_doc("but then, even though it rained, then we left."), MarkerLexicon::bundled(), "x");
    CHECK(p.count_of("but") == 1);
    CHECK(p.count_of("then") == 2);
    CHECK(p.count_of("even though") == 1);
    CHECK(p.count_of("though") == 0);
    CHECK(p.total == 4);
    CHECK(p.corpus_tokens == 12);
    CHECK(p.rate_per_10k(0) >= 0.0);
}

TEST_CASE("marker counting on an empty corpus") {
    auto p = count_markers(Corpus{}, MarkerLexicon::bundled());
    CHECK(p.total == 0);
    for (auto c : p.counts) CHECK(c == 0);
    for (std::size_t i = 0; i < p.counts.size(); ++i) CHECK(p.rate_per_10k(i) == 0.0);
}

TEST_CASE("marker fixture cases") {
    const auto& lex = MarkerLexicon::bundled();
    const auto& cases = marker_cases();
    REQUIRE(cases.size() == 30);
    for (std::size_t i = 0; i < cases.size(); ++i) {
        INFO("case " << i << ": " << cases[i].text);
        auto p = count_markers(Corpus({case_document("c", cases[i].text)}), lex);
        std::size_t expected_total = 0;
        for (std::size_t k = 0; k < p.connectives.size(); ++k) {
            auto it = cases[i].expected.find(p.connectives[k]);
            const std::size_t want = it == cases[i].expected.end() ? 0 : it->second;
            INFO(p.connectives[k]);
            CHECK(p.counts[k] == want);
            expected_total += want;
        }
        for (const auto& [name, n] : cases[i].expected) CHECK_NOTHROW(p.count_of(name));
        CHECK(p.total == expected_total);
    }
}

TEST_CASE("marker totals are conserved and match the scanning oracle") {
    const auto& lex = MarkerLexicon::bundled();
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto corpus = random_marker_corpus(seed, 25);
        auto p = count_markers(corpus, lex);
        std::size_t by_conn = 0, by_doc = 0;
        for (auto c : p.counts) by_conn += c;
        for (const auto& [id, n] : p.per_document_totals) by_doc += n;
        CHECK(p.total == by_conn);
        CHECK(p.total == by_doc);
        std::vector<std::vector<std::string>> all;
        for (const auto& d : corpus) all.insert(all.end(), d.sentences.begin(), d.sentences.end());
        auto ref = oracle::count_connectives(all, lex);
        for (std::size_t k = 0; k < p.connectives.size(); ++k) {
            auto it = ref.find(p.connectives[k]);
            CHECK(p.counts[k] == (it == ref.end() ? 0 : it->second));
        }
    }
}

TEST_CASE("removing a connective only frees its shadowed parts") {
    const auto& lex = MarkerLexicon::bundled();
    auto doc = one_doc("but then, even though it rained, then we left. as soon as it stopped we ran.");
    auto with = count_markers(doc, lex);
    auto without = count_markers(doc, lex.without("even though"));
    CHECK(without.count_of("though") == 1);
    CHECK(without.count_of("then") == with.count_of("then"));
    CHECK(without.count_of("but") == with.count_of("but"));
    CHECK_THROWS(without.count_of("even though"));
    auto no_soon = count_markers(doc, lex.without("as soon as"));
    CHECK(no_soon.count_of("as") == 2);
    auto no_then = count_markers(doc, lex.without("then"));
    CHECK(no_then.count_of("but") == 1);
    CHECK(no_then.count_of("even though") == 1);
    CHECK(no_then.total == with.total - 2);
}

TEST_CASE("entity grid examples") {
    auto g1 = build_entity_grid(one_doc("john sleeps. john eats.")[0]);
    REQUIRE(g1.entities.size() == 1);
    CHECK(g1.row_string(g1.entity_index("john")) == "SS");

    auto g2 = build_entity_grid(one_doc("john saw mary. mary slept.")[0]);
    CHECK(g2.entities == std::vector<std::string>{"john", "mary"});
    CHECK(g2.row_string(g2.entity_index("john")) == "S-");
    CHECK(g2.row_string(g2.entity_index("mary")) == "OS");

    auto g3 = build_entity_grid(one_doc("the dog barked.")[0]);
    CHECK(g3.sentences == 1);
    CHECK(g3.row_string(g3.entity_index("dog")) == "S");

    auto g4 = build_entity_grid(one_doc("the dog saw the cat near the river. the river ran.")[0]);
    CHECK(g4.row_string(g4.entity_index("dog")) == "S-");
    CHECK(g4.row_string(g4.entity_index("cat")) == "O-");
    CHECK(g4.row_string(g4.entity_index("river")) == "XS");

    auto aux = build_entity_grid(one_doc("john was happy.")[0]);
    CHECK(aux.row_string(aux.entity_index("john")) == "S");

    auto empty = build_entity_grid(one_doc("she ran quickly.")[0]);
    CHECK(empty.empty());
    CHECK_THROWS_AS(g1.entity_index("mary"), std::invalid_argument);
}

TEST_CASE("entity grid shape") {
    auto corpus = synthetic::coherent_corpus(3, 20);
    for (const auto& d : corpus) {
        auto g = build_entity_grid(d);
        CHECK(g.rows.size() == g.entities.size());
        for (const auto& row : g.rows) {
            CHECK(row.size() == d.sentences.size());
            CHECK(std::any_of(row.begin(), row.end(), [](Role r) { return r != Role::absent; }));
        }
    }
}

TEST_CASE("egrid model from a single S S row") {
    auto m = train_egrid({grid_of({{R::subject, R::subject}})}, 1, 0.0);
    CHECK(m.probability({R::subject}, R::subject) == 1.0);
    CHECK(m.probability({R::absent}, R::subject) == 1.0);
    CHECK(m.probability({R::object}, R::other) == 0.25);
    auto s = train_egrid({grid_of({{R::subject, R::subject}})}, 1, 1.0);
    CHECK(s.probability({R::object}, R::subject) == 0.25);
    CHECK(s.probability({R::subject}, R::subject) == Catch::Approx(2.0 / 5.0));
    CHECK_THROWS_AS(EgridModel(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(train_egrid({EntityGrid{}}, 2, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(m.probability({R::subject, R::subject}, R::subject), std::invalid_argument);
}

TEST_CASE("egrid model is normalized and scale invariant") {
    std::vector<EntityGrid> grids;
    for (const auto& d : synthetic::coherent_corpus(5, 30)) grids.push_back(build_entity_grid(d));
    auto doubled = grids;
    doubled.insert(doubled.end(), grids.begin(), grids.end());
    for (std::size_t h = 1; h <= 3; ++h) {
        for (double sm : {0.0, 0.5, 1.0}) {
            auto a = train_egrid(grids, h, sm);
            for (std::size_t k = 0; k < a.num_histories(); ++k) {
                double sum = 0.0;
                for (std::size_t r = 0; r < kRoles; ++r) sum += a.probability(k, r);
                CHECK(std::abs(sum - 1.0) <= 1e-9);
            }
        }
        // unsmoothed estimates depend only on count ratios
        auto a = train_egrid(grids, h, 0.0);
        auto b = train_egrid(doubled, h, 0.0);
        for (std::size_t k = 0; k < a.num_histories(); ++k)
            for (std::size_t r = 0; r < kRoles; ++r)
                CHECK(a.probability(k, r) == Catch::Approx(b.probability(k, r)).epsilon(1e-12));
    }
}

TEST_CASE("score_grid") {
    auto half = train_egrid({grid_of({{R::subject, R::subject},
                                      {R::subject, R::object},
                                      {R::object, R::subject},
                                      {R::object, R::object}})},
                            1, 0.0);
    auto g = grid_of({{R::subject, R::object, R::object, R::subject}, {R::object, R::subject, R::subject, R::object}});
    auto s = score_grid(half, g);
    CHECK(s.mean_log_prob == Catch::Approx(std::log(0.5)).epsilon(1e-12));
    CHECK(s.transitions == 8);

    auto h2 = train_egrid({grid_of({{R::subject, R::object, R::absent}, {R::object, R::object, R::subject}})}, 2, 1.0);
    auto single = grid_of({{R::subject}, {R::object}});
    const double want = 0.5 * (std::log(h2.probability({R::absent, R::absent}, R::subject)) +
                               std::log(h2.probability({R::absent, R::absent}, R::object)));
    CHECK(score_grid(h2, single).mean_log_prob == Catch::Approx(want).epsilon(1e-12));
    CHECK(score_grid(h2, single).transitions == 2);

    auto skew = train_egrid({grid_of({{R::subject, R::subject},
                                      {R::subject, R::subject},
                                      {R::subject, R::subject},
                                      {R::subject, R::object}})},
                            1, 0.0);
    CHECK(score_grid(skew, grid_of({{R::subject, R::subject}})).mean_log_prob >
          score_grid(skew, grid_of({{R::subject, R::object}})).mean_log_prob);

    auto e = score_grid(half, EntityGrid{});
    CHECK(e.empty);
    CHECK(e.mean_log_prob == 0.0);
}

TEST_CASE("score_grid agrees with the explicit-history oracle") {
    auto corpus = synthetic::coherent_corpus(11, 40);
    std::vector<EntityGrid> grids;
    for (const auto& d : corpus) grids.push_back(build_entity_grid(d));
    for (std::size_t h = 1; h <= 3; ++h) {
        auto m = train_egrid(grids, h, 1.0);
        for (const auto& g : grids) CHECK(score_grid(m, g).mean_log_prob == Catch::Approx(oracle::egrid_score(m, g)).epsilon(1e-12));
    }
}

namespace {

EgridModel coherent_model() {
    std::vector<EntityGrid> grids;
    for (const auto& d : synthetic::coherent_corpus(101, 150)) grids.push_back(build_entity_grid(d));
    return train_egrid(grids, 2, 1.0);
}

}  // namespace

TEST_CASE("discrimination of a one-sentence document") {
    auto m = coherent_model();
    auto o = discrimination_test(m, one_doc("the dog barked.")[0], 20, 4);
    CHECK(o.wins == 0);
    CHECK(o.ties == 20);
    CHECK(o.losses == 0);
    CHECK_THROWS_AS(discrimination_test(m, Document{}, 20, 1), std::invalid_argument);
}

TEST_CASE("identical sentences force ties") {
    auto m = coherent_model();
    auto o = discrimination_test(m, one_doc("the dog saw the cat. the dog saw the cat. the dog saw the cat.")[0], 20, 9);
    CHECK(o.ties == 20);
}

TEST_CASE("discrimination is deterministic") {
    auto m = coherent_model();
    auto doc = synthetic::coherent_corpus(77, 1)[0];
    auto a = discrimination_test(m, doc, 20, 5);
    auto b = discrimination_test(m, doc, 20, 5);
    CHECK(a.permutations == b.permutations);
    CHECK(a.permuted_scores == b.permuted_scores);
    CHECK(a.wins == b.wins);
    CHECK(a.ties == b.ties);
}

TEST_CASE("engineered chain beats every reordering") {
    auto m = coherent_model();
    auto doc = one_doc(
                   "The boat saw the harbor. The harbor saw the captain. The captain saw the wave. The wave saw the "
                   "island. The island saw the beach.")[0];
    auto all = oracle::all_order_scores(m, doc);
    const std::vector<std::size_t> identity{0, 1, 2, 3, 4};
    for (const auto& [order, score] : all)
        if (order != identity) REQUIRE(all.at(identity) > score + 1e-12);
    auto o = discrimination_test(m, doc, 20, 12);
    REQUIRE(std::find(o.permutations.begin(), o.permutations.end(), identity) == o.permutations.end());
    CHECK(o.wins == 20);
}

TEST_CASE("sampled outcomes agree with exhaustive enumeration") {
    auto m = coherent_model();
    auto corpus = synthetic::coherent_corpus(55, 40, 1, 4);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const auto& doc = corpus[i];
        auto all = oracle::all_order_scores(m, doc);
        std::vector<std::size_t> identity(doc.sentences.size());
        for (std::size_t k = 0; k < identity.size(); ++k) identity[k] = k;
        const double orig = all.at(identity);
        auto o = discrimination_test(m, doc, 20, derive_seed(3, i));
        std::size_t w = 0, t = 0, l = 0;
        for (std::size_t k = 0; k < o.permutations.size(); ++k) {
            const double ref = all.at(o.permutations[k]);
            CHECK(o.permuted_scores[k] == Catch::Approx(ref).epsilon(1e-12));
            if (std::abs(orig - ref) <= 1e-12) ++t;
            else if (orig > ref) ++w;
            else ++l;
        }
        CHECK(o.wins == w);
        CHECK(o.ties == t);
        CHECK(o.losses == l);
    }
}

TEST_CASE("coherent text separates from scrambled text") {
    auto m = coherent_model();
    auto test = synthetic::coherent_corpus(202, 60);
    auto coherent = discrimination_report(discriminate_corpus(m, test, 20, 1));
    auto shuffled = discrimination_report(discriminate_corpus(m, synthetic::scrambled(test, 9), 20, 1));
    CHECK(coherent.accuracy >= 0.8);
    CHECK(shuffled.accuracy >= 0.35);
    CHECK(shuffled.accuracy <= 0.65);
}

TEST_CASE("discrimination_report") {
    DiscriminationOutcome o;
    o.wins = 3;
    o.ties = 1;
    auto r = discrimination_report({o});
    CHECK(r.accuracy == 0.75);
    CHECK(r.precision == 1.0);
    CHECK(r.recall == 0.75);
    CHECK(r.f_score == Catch::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(r.f_defined);

    DiscriminationOutcome ties;
    ties.ties = 20;
    auto rt = discrimination_report({ties, ties});
    CHECK(rt.accuracy == 0.0);
    CHECK(rt.f_score == 0.0);
    CHECK_FALSE(rt.f_defined);

    DiscriminationOutcome wins;
    wins.wins = 20;
    auto rw = discrimination_report({wins});
    CHECK(rw.accuracy == 1.0);
    CHECK(rw.f_score == 1.0);

    CHECK_THROWS_AS(discrimination_report({}), std::invalid_argument);
    CHECK_THROWS_AS(discrimination_report({DiscriminationOutcome{}}), std::invalid_argument);
}
