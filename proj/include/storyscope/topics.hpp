#pragma once

// Content-word filtering for topic modeling, dominant-topic annotation and
// the g-test contrast of topic frequencies between two document samples.

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/lda.hpp"
#include "storyscope/resources.hpp"
#include "storyscope/tagger.hpp"

namespace storyscope {

enum class ContentMode { stoplist, pos };

inline std::string content_mode_name(ContentMode m) { return m == ContentMode::pos ? "pos" : "stoplist"; }

inline ContentMode parse_content_mode(const std::string& s) {
    if (s == "stoplist") return ContentMode::stoplist;
    if (s == "pos") return ContentMode::pos;
    throw std::invalid_argument("unknown content filter mode \"" + s + "\"");
}

inline const WordSet& default_function_words() {
    static const WordSet set = make_word_set(resources::kFunctionWords);
    return set;
}

// Lowercased content tokens. Punctuation and number-only tokens always go;
// stoplist mode drops bundled function words, pos mode keeps nouns, verbs
// and adjectives according to the lexicon tagger.
inline std::vector<std::string> content_filter(const std::vector<Token>& tokens, ContentMode mode,
                                               const WordSet& function_words = default_function_words(),
                                               const LexiconTagger& tagger = LexiconTagger::bundled()) {
    std::vector<std::string> out;
    for (const auto& raw : tokens) {
        const std::string t = to_lower(raw);
        if (t.empty() || is_punctuation_token(t)) continue;
        const Pos p = tagger.tag(t);
        if (p == Pos::number || p == Pos::punctuation) continue;
        const bool keep = mode == ContentMode::stoplist ? function_words.count(t) == 0 : tagger.is_content(p);
        if (keep) out.push_back(t);
    }
    return out;
}

inline std::vector<std::string> content_filter(const Document& doc, ContentMode mode) {
    return content_filter(doc.tokens(), mode);
}

inline std::vector<LdaDocument> lda_documents(const Corpus& corpus, ContentMode mode) {
    std::vector<LdaDocument> out;
    out.reserve(corpus.size());
    for (const auto& d : corpus) out.push_back({d.id, content_filter(d, mode)});
    return out;
}

struct TopicAnnotation {
    std::string doc_id;
    std::vector<std::size_t> topics;  // ascending topic ids
    std::vector<double> proportions;  // theta of each listed topic
    double threshold = 0.10;
};

inline TopicAnnotation annotate_theta(const std::string& doc_id, const std::vector<double>& theta,
                                      double threshold = 0.10) {
    TopicAnnotation a{doc_id, {}, {}, threshold};
    for (std::size_t t = 0; t < theta.size(); ++t) {
        if (theta[t] >= threshold) {
            a.topics.push_back(t);
            a.proportions.push_back(theta[t]);
        }
    }
    return a;
}

inline TopicAnnotation annotate_topics(const TopicModel& model, const std::string& doc_id,
                                       double threshold = 0.10) {
    return annotate_theta(doc_id, model.theta(model.doc_index(doc_id)), threshold);
}

inline std::vector<TopicAnnotation> annotate_all(const TopicModel& model, double threshold = 0.10) {
    std::vector<TopicAnnotation> out;
    for (std::size_t d = 0; d < model.num_docs(); ++d)
        out.push_back(annotate_theta(model.doc_ids()[d], model.theta(d), threshold));
    return out;
}

// Chi-square critical value, one degree of freedom, p = 0.05.
inline constexpr double kGCritical = 3.841;

struct GTestResult {
    double g = 0.0;
    bool significant = false;
};

// Two-cell log-likelihood (corpus comparison form):
//   E_a = n_a (a + b) / (n_a + n_b),  E_b = n_b (a + b) / (n_a + n_b)
//   G   = 2 (a ln(a / E_a) + b ln(b / E_b)),  with 0 ln 0 = 0
inline GTestResult g_test(std::uint64_t count_a, std::uint64_t count_b, std::uint64_t n_a, std::uint64_t n_b) {
    if (n_a == 0 || n_b == 0) throw std::invalid_argument("g_test: sample sizes must be positive");
    if (count_a > n_a || count_b > n_b) throw std::invalid_argument("g_test: count exceeds sample size");
    if (count_a + count_b == 0) return {0.0, false};
    const double a = static_cast<double>(count_a);
    const double b = static_cast<double>(count_b);
    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);
    const double ea = na * (a + b) / (na + nb);
    const double eb = nb * (a + b) / (na + nb);
    double g = 0.0;
    if (count_a > 0) g += a * std::log(a / ea);
    if (count_b > 0) g += b * std::log(b / eb);
    g *= 2.0;
    if (g < 0.0) g = 0.0;  // rounding on exactly proportional counts
    return {g, g > kGCritical};
}

enum class Direction { none, a, b };

inline std::string direction_name(Direction d, const std::string& a = "A", const std::string& b = "B") {
    switch (d) {
        case Direction::a: return a;
        case Direction::b: return b;
        default: return "none";
    }
}

struct ContrastResult {
    std::size_t topic = 0;
    std::size_t count_a = 0, count_b = 0;
    std::size_t n_a = 0, n_b = 0;
    double g = 0.0;
    bool significant = false;
    Direction direction = Direction::none;
};

// Per topic, the number of documents of each sample annotated with it, fed to
// g_test. Sorted by G descending, then topic id.
inline std::vector<ContrastResult> contrast_samples(const std::vector<TopicAnnotation>& annotations,
                                                    const std::vector<std::string>& sample_a,
                                                    const std::vector<std::string>& sample_b,
                                                    std::size_t num_topics) {
    if (sample_a.empty() || sample_b.empty()) throw std::invalid_argument("contrast_samples: empty sample");
    std::map<std::string, const TopicAnnotation*> by_id;
    for (const auto& a : annotations) by_id[a.doc_id] = &a;
    std::set<std::string> in_a(sample_a.begin(), sample_a.end());
    for (const auto& id : sample_b)
        if (in_a.count(id)) throw std::invalid_argument("contrast_samples: samples overlap at \"" + id + "\"");
    auto tally = [&](const std::vector<std::string>& ids) {
        std::vector<std::size_t> counts(num_topics, 0);
        for (const auto& id : ids) {
            auto it = by_id.find(id);
            if (it == by_id.end()) throw std::invalid_argument("contrast_samples: no annotation for \"" + id + "\"");
            for (auto t : it->second->topics) {
                if (t >= num_topics) throw std::invalid_argument("contrast_samples: topic id out of range");
                ++counts[t];
            }
        }
        return counts;
    };
    const auto ca = tally(sample_a);
    const auto cb = tally(sample_b);
    std::vector<ContrastResult> out;
    for (std::size_t t = 0; t < num_topics; ++t) {
        ContrastResult r;
        r.topic = t;
        r.count_a = ca[t];
        r.count_b = cb[t];
        r.n_a = sample_a.size();
        r.n_b = sample_b.size();
        const auto g = g_test(r.count_a, r.count_b, r.n_a, r.n_b);
        r.g = g.g;
        r.significant = g.significant;
        // compare count_a / n_a with count_b / n_b exactly
        const auto lhs = static_cast<unsigned long long>(r.count_a) * r.n_b;
        const auto rhs = static_cast<unsigned long long>(r.count_b) * r.n_a;
        r.direction = lhs > rhs ? Direction::a : (rhs > lhs ? Direction::b : Direction::none);
        out.push_back(r);
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.g > y.g; });
    return out;
}

}  // namespace storyscope
