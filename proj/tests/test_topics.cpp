#include <catch_amalgamated.hpp>

#include <algorithm>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <sstream>

#include "storyscope/synthetic.hpp"
#include "storyscope/topics.hpp"
#include "oracles.hpp"

using namespace storyscope;
using Toks = std::vector<std::string>;
using BigFloat = boost::multiprecision::cpp_dec_float_50;

namespace {

LdaParams params(std::size_t T, std::size_t iters, std::uint64_t seed) {
    LdaParams p;
    p.topics = T;
    p.iterations = iters;
    p.alpha = 5.0 / static_cast<double>(T);
    p.seed = seed;
    return p;
}

double g_reference(std::uint64_t a, std::uint64_t b, std::uint64_t na, std::uint64_t nb) {
    const BigFloat A(a), B(b), NA(na), NB(nb);
    const BigFloat ea = NA * (A + B) / (NA + NB);
    const BigFloat eb = NB * (A + B) / (NA + NB);
    BigFloat g = 0;
    if (a > 0) g += A * boost::multiprecision::log(A / ea);
    if (b > 0) g += B * boost::multiprecision::log(B / eb);
    return static_cast<double>(2 * g);
}

}  // namespace

TEST_CASE("content_filter stoplist mode") {
    CHECK(content_filter(Toks{"i", "was", "in", "the", "room", "."}, ContentMode::stoplist) == Toks{"room"});
    CHECK(content_filter(Toks{"it", "was", "the", "one", "of", "them"}, ContentMode::stoplist).empty());
    CHECK(content_filter(Toks{"Room", "42", "!"}, ContentMode::stoplist) == Toks{"room"});
}

TEST_CASE("content_filter pos mode keeps nouns, verbs and adjectives") {
    CHECK(content_filter(Toks{"she", "ran", "quickly"}, ContentMode::pos) == Toks{"ran"});
    CHECK(content_filter(Toks{"the", "big", "dog", "barked", "loudly"}, ContentMode::pos) ==
          Toks{"big", "dog", "barked"});
    CHECK(parse_content_mode("pos") == ContentMode::pos);
    CHECK_THROWS_AS(parse_content_mode("tags"), std::invalid_argument);
}

TEST_CASE("lexicon tagger") {
    const auto& t = LexiconTagger::bundled();
    CHECK(t.tag("dog") == Pos::noun);
    CHECK(t.tag("dogs") == Pos::noun);
    CHECK(t.tag("barked") == Pos::verb);
    CHECK(t.tag("running") == Pos::verb);
    CHECK(t.tag("quickly") == Pos::adverb);
    CHECK(t.tag("the") == Pos::determiner);
    CHECK(t.tag("3.5") == Pos::number);
    CHECK(t.tag(",") == Pos::punctuation);
    CHECK(t.tag("zorblax") == Pos::noun);
    CHECK(t.tag("famous") == Pos::adjective);
}

TEST_CASE("lda with one topic and one word") {
    auto m = fit_lda({{"d", {"x", "x", "x"}}}, params(1, 10, 1));
    CHECK(m.theta(0)[0] == Catch::Approx(1.0));
    CHECK(m.phi(0)[0] == Catch::Approx(1.0));
}

TEST_CASE("lda counts stay consistent and estimates normalized") {
    auto planted = synthetic::planted_topic_corpus(4, 50, 30, 3, 10);
    std::size_t checked = 0;
    auto m = fit_lda(planted.docs, params(4, 25, 9), [&](const TopicModel& tm) {
        CHECK(tm.counts_consistent());
        ++checked;
    });
    CHECK(checked == 25);
    for (std::size_t d = 0; d < m.num_docs(); ++d) {
        double s = 0.0;
        for (double v : m.theta(d)) {
            CHECK(v > 0.0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
    for (std::size_t t = 0; t < m.topics(); ++t) {
        double s = 0.0;
        for (double v : m.phi(t)) {
            CHECK(v > 0.0);
            s += v;
        }
        CHECK(std::abs(s - 1.0) <= 1e-9);
    }
}

TEST_CASE("lda is deterministic given the seed") {
    auto planted = synthetic::planted_topic_corpus(4, 30, 20);
    auto a = fit_lda(planted.docs, params(3, 20, 5));
    auto b = fit_lda(planted.docs, params(3, 20, 5));
    auto c = fit_lda(planted.docs, params(3, 20, 6));
    CHECK(a.assignments() == b.assignments());
    CHECK(a.theta(3) == b.theta(3));
    CHECK(a.assignments() != c.assignments());
}

TEST_CASE("lda recovers planted topics") {
    auto planted = synthetic::planted_topic_corpus(1);
    auto m = fit_lda(planted.docs, params(3, 200, 1));
    std::vector<Toks> top;
    for (std::size_t t = 0; t < 3; ++t) top.push_back(top_words(m, t, 10));
    CHECK(oracle::greedy_topic_recovery(top, planted.topic_words) >= 0.8);
}

TEST_CASE("lda excludes empty documents with a uniform theta") {
    auto m = fit_lda({{"full", {"a", "b"}}, {"empty", {}}}, params(4, 5, 2));
    CHECK(m.excluded_docs() == Toks{"empty"});
    for (double v : m.theta(m.doc_index("empty"))) CHECK(v == Catch::Approx(0.25));
    CHECK_THROWS_AS(fit_lda({{"e", {}}}, params(2, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(fit_lda({}, params(2, 1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(fit_lda({{"d", {"a"}}}, params(0, 1, 1)), std::invalid_argument);
}

TEST_CASE("lda state saves and reloads") {
    auto planted = synthetic::planted_topic_corpus(2, 20, 15);
    auto m = fit_lda(planted.docs, params(3, 10, 3));
    std::stringstream ss;
    m.save(ss);
    auto back = TopicModel::load(ss);
    CHECK(back.assignments() == m.assignments());
    CHECK(back.vocabulary() == m.vocabulary());
    CHECK(back.counts_consistent());
    for (std::size_t d = 0; d < m.num_docs(); ++d) CHECK(back.theta(d) == m.theta(d));
    std::stringstream again;
    back.save(again);
    std::stringstream first;
    m.save(first);
    CHECK(again.str() == first.str());
}

TEST_CASE("top_words orders by phi then word") {
    auto m = fit_lda({{"d", {"a", "a", "a", "a", "a", "b", "b", "b", "c", "c"}}}, params(1, 3, 1));
    CHECK(top_words(m, 0, 2) == Toks{"a", "b"});
    CHECK(top_words(m, 0, 10) == Toks{"a", "b", "c"});
    auto tie = fit_lda({{"d", {"b", "a"}}}, params(1, 3, 1));
    CHECK(top_words(tie, 0, 2) == Toks{"a", "b"});
    CHECK_THROWS_AS(top_words(m, 1), std::out_of_range);
}

TEST_CASE("annotate_theta applies the threshold") {
    auto a = annotate_theta("d", {0.5, 0.3, 0.12, 0.08});
    CHECK(a.topics == std::vector<std::size_t>{0, 1, 2});
    CHECK(a.proportions[2] == 0.12);
    auto flat = annotate_theta("d", std::vector<double>(50, 0.02));
    CHECK(flat.topics.empty());
}

TEST_CASE("g_test worked example") {
    auto r = g_test(30, 10, 100, 100);
    CHECK(r.g == Catch::Approx(2.0 * (30 * std::log(1.5) + 10 * std::log(0.5))).epsilon(1e-12));
    CHECK(r.g == Catch::Approx(10.4650).margin(5e-5));
    CHECK(r.significant);
}

TEST_CASE("g_test null, symmetry and threshold") {
    CHECK(g_test(20, 40, 100, 200).g == Catch::Approx(0.0).margin(1e-12));
    CHECK_FALSE(g_test(20, 40, 100, 200).significant);
    CHECK(g_test(0, 0, 10, 10).g == 0.0);
    CHECK(g_test(7, 19, 40, 90).g == g_test(19, 7, 90, 40).g);
    CHECK_THROWS_AS(g_test(11, 0, 10, 10), std::invalid_argument);
    CHECK_THROWS_AS(g_test(0, 0, 0, 10), std::invalid_argument);
    CHECK(kGCritical == 3.841);
    // G just above and just below the critical value
    bool saw_above = false, saw_below = false;
    for (std::uint64_t a = 0; a <= 100; ++a) {
        auto r = g_test(a, 50, 100, 100);
        CHECK(r.significant == (r.g > 3.841));
        saw_above |= r.significant;
        saw_below |= !r.significant;
    }
    CHECK(saw_above);
    CHECK(saw_below);
}

TEST_CASE("g_test grows as proportions diverge") {
    for (std::uint64_t b : {0u, 10u, 37u}) {
        double prev = -1.0;
        for (std::uint64_t a = b; a <= 100; ++a) {
            const double g = g_test(a, b, 100, 100).g;
            CHECK(g >= prev - 1e-12);
            prev = g;
        }
        prev = -1.0;
        for (std::uint64_t a = b + 1; a-- > 0;) {
            const double g = g_test(a, b, 100, 100).g;
            CHECK(g >= prev - 1e-12);
            prev = g;
        }
    }
}

TEST_CASE("g_test agrees with 50-digit evaluation") {
    Rng rng(31);
    for (int i = 0; i < 300; ++i) {
        const auto na = 1 + rng.index(5000), nb = 1 + rng.index(5000);
        const auto a = rng.index(na + 1), b = rng.index(nb + 1);
        const double ref = g_reference(a, b, na, nb);
        const double got = g_test(a, b, na, nb).g;
        if (ref > 1e-9) CHECK(std::abs(got - ref) / ref <= 1e-6);
        else CHECK(got <= 1e-6);
    }
}

TEST_CASE("contrast_samples") {
    std::vector<TopicAnnotation> ann;
    std::vector<std::string> a, b;
    for (int i = 0; i < 100; ++i) {
        const std::string ida = "a" + std::to_string(i), idb = "b" + std::to_string(i);
        ann.push_back({ida, i < 30 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{1}, {}, 0.1});
        ann.push_back({idb, i < 10 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{1}, {}, 0.1});
        a.push_back(ida);
        b.push_back(idb);
    }
    auto r = contrast_samples(ann, a, b, 3);
    REQUIRE(r.size() == 3);
    CHECK(r[0].g >= r[1].g);
    CHECK(r[1].g >= r[2].g);
    const auto& t0 = *std::find_if(r.begin(), r.end(), [](const auto& x) { return x.topic == 0; });
    CHECK(t0.count_a == 30);
    CHECK(t0.count_b == 10);
    CHECK(t0.significant);
    CHECK(t0.direction == Direction::a);
    CHECK(t0.g == Catch::Approx(10.4650).margin(5e-5));
    const auto& t2 = *std::find_if(r.begin(), r.end(), [](const auto& x) { return x.topic == 2; });
    CHECK(t2.direction == Direction::none);
    CHECK_THROWS_AS(contrast_samples(ann, {}, b, 3), std::invalid_argument);
    CHECK_THROWS_AS(contrast_samples(ann, a, {"a1"}, 3), std::invalid_argument);
}

TEST_CASE("contrast of copies finds nothing") {
    std::vector<TopicAnnotation> ann;
    std::vector<std::string> a, b;
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::size_t> topics;
        for (std::size_t t = 0; t < 5; ++t)
            if (rng.uniform() < 0.3) topics.push_back(t);
        ann.push_back({"a" + std::to_string(i), topics, {}, 0.1});
        ann.push_back({"b" + std::to_string(i), topics, {}, 0.1});
        a.push_back("a" + std::to_string(i));
        b.push_back("b" + std::to_string(i));
    }
    for (const auto& r : contrast_samples(ann, a, b, 5)) {
        CHECK_FALSE(r.significant);
        CHECK(r.g == Catch::Approx(0.0).margin(1e-12));
    }
}
