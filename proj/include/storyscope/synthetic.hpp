#pragma once

// Seeded generators for corpora with a known planted structure: a two-genre
// classification corpus, a disjoint-vocabulary topic corpus and a coherent
// entity-chain corpus. Used by the bundled fixtures and by the tests.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/lda.hpp"
#include "storyscope/rng.hpp"

namespace storyscope::synthetic {

// Sentence-initial uncertainty adverbs planted in the first genre.
inline const std::vector<std::string>& uncertainty_markers() {
    static const std::vector<std::string> m{"maybe",      "perhaps",  "somehow",  "suddenly",
                                            "apparently", "vaguely",  "strangely", "oddly",
                                            "probably",   "possibly", "seemingly", "mysteriously"};
    return m;
}

// Sentence-final date expressions planted in the second genre; the last
// token of each is the planted feature.
inline const std::vector<std::string>& date_markers() {
    static const std::vector<std::string> m{"yesterday", "today",    "tonight", "monday",  "tuesday",  "wednesday",
                                            "thursday",  "friday",   "saturday", "sunday", "weekend", "2009"};
    return m;
}

inline std::string date_phrase(const std::string& token) {
    if (token == "yesterday" || token == "today" || token == "tonight") return token;
    if (token == "weekend") return "last weekend";
    if (token == "2009") return "in 2009";
    return "on " + token;
}

inline const std::vector<std::vector<std::string>>& themes() {
    static const std::vector<std::vector<std::string>> t{
        {"boat", "harbor", "captain", "wave", "island", "beach", "sailor", "anchor", "shell", "net", "lighthouse", "gull"},
        {"tree", "wolf", "cabin", "river", "trail", "hunter", "fox", "bridge", "moss", "owl", "meadow", "deer"},
        {"teacher", "student", "desk", "lesson", "exam", "pencil", "library", "classroom", "principal", "locker",
         "notebook", "chalk"},
        {"street", "bus", "store", "taxi", "tower", "subway", "market", "crowd", "police", "elevator", "bakery",
         "corner"},
        {"kitchen", "door", "window", "table", "sister", "brother", "mother", "dog", "cat", "garden", "sofa", "attic"},
    };
    return t;
}

inline const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"saw",     "found",   "opened",  "watched", "followed", "called",
                                            "pushed",  "pulled",  "visited", "helped",  "caught",   "held",
                                            "chased",  "cleaned", "carried", "noticed", "reached",  "left"};
    return v;
}

inline const std::vector<std::string>& connective_openers() {
    static const std::vector<std::string> c{"then", "later", "but", "finally", "meanwhile", "still"};
    return c;
}

inline std::string capitalize(std::string s) {
    if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
    return s;
}

// Sentences "The A verb the B." where every entity is introduced as an object
// and then stays subject for the next sentences: rows read "O S S ..." and
// sentence order carries real information.
struct ChainSentence {
    std::string subject, verb, object;
};

inline std::vector<ChainSentence> entity_chain(Rng& rng, const std::vector<std::string>& pool, std::size_t sentences) {
    std::vector<std::string> nouns = pool;
    rng.shuffle(nouns);
    std::size_t next = 0;
    auto fresh = [&]() { return nouns[next++ % nouns.size()]; };
    std::vector<ChainSentence> out;
    std::string subject = fresh();
    while (out.size() < sentences) {
        const std::size_t hold = 1 + rng.index(2);  // subject persists for the introduction plus 1 or 2 sentences
        for (std::size_t k = 0; k < hold && out.size() < sentences; ++k) {
            ChainSentence s{subject, verbs()[rng.index(verbs().size())], fresh()};
            out.push_back(s);
        }
        subject = out.back().object;
    }
    return out;
}

inline std::string render(const ChainSentence& s, const std::string& opener = {}, const std::string& tail = {}) {
    std::string text = opener.empty() ? "The " + s.subject : capitalize(opener) + " the " + s.subject;
    text += " " + s.verb + " the " + s.object;
    if (!tail.empty()) text += " " + tail;
    return text + ".";
}

struct ClassificationSpec {
    std::size_t docs_per_genre = 400;
    std::size_t authors_per_genre = 20;
    std::size_t markers_per_doc = 3;
    std::size_t min_sentences = 6;
    std::size_t max_sentences = 10;
    double theme_bias = 0.3;  // chance a document uses one of its genre's two preferred themes
    std::string genre_a = "dreams";   // uncertainty markers
    std::string genre_b = "stories";  // date tokens
};

// Two genres with the same sentence machinery; only the planted markers and a
// mild theme preference differ. Authors own consecutive blocks of documents.
inline std::vector<Document> classification_documents(const ClassificationSpec& spec, std::uint64_t seed,
                                                      bool genre_a) {
    Rng rng(derive_seed(seed, genre_a ? 0 : 1));
    const auto& markers = genre_a ? uncertainty_markers() : date_markers();
    const std::string& label = genre_a ? spec.genre_a : spec.genre_b;
    const std::string prefix = genre_a ? "a" : "b";
    std::vector<Document> docs;
    const std::size_t per_author = (spec.docs_per_genre + spec.authors_per_genre - 1) / spec.authors_per_genre;
    for (std::size_t i = 0; i < spec.docs_per_genre; ++i) {
        const std::size_t author = i / per_author;
        // genre A leans to the sea and forest themes, genre B to school and city
        const std::size_t preferred = genre_a ? rng.index(2) : 2 + rng.index(2);
        const std::size_t theme = rng.uniform() < spec.theme_bias ? preferred : rng.index(themes().size());
        const std::size_t n = spec.min_sentences + rng.index(spec.max_sentences - spec.min_sentences + 1);
        auto chain = entity_chain(rng, themes()[theme], n);
        std::vector<std::string> openers(n), tails(n);
        for (std::size_t k = 0; k < n; ++k)
            if (rng.uniform() < 0.3) openers[k] = connective_openers()[rng.index(connective_openers().size())];
        auto slots = rng.permutation(n);
        for (std::size_t m = 0; m < spec.markers_per_doc && m < n; ++m) {
            const auto& tok = markers[rng.index(markers.size())];
            if (genre_a) openers[slots[m]] = tok;
            else tails[slots[m]] = date_phrase(tok);
        }
        std::string text;
        for (std::size_t k = 0; k < n; ++k) {
            if (k) text += '\n';
            text += render(chain[k], openers[k], tails[k]);
        }
        char id[32];
        std::snprintf(id, sizeof id, "%s%04zu", prefix.c_str(), i);
        char auth[32];
        std::snprintf(auth, sizeof auth, "%s_author%02zu", prefix.c_str(), author);
        docs.push_back(Document::from_text(id, auth, label, "synthetic", text));
    }
    return docs;
}

// Both genres interleaved in a seeded random order.
inline Corpus classification_corpus(const ClassificationSpec& spec = {}, std::uint64_t seed = 7) {
    auto a = classification_documents(spec, seed, true);
    auto b = classification_documents(spec, seed, false);
    a.insert(a.end(), b.begin(), b.end());
    Rng rng(derive_seed(seed, 2));
    rng.shuffle(a);
    return Corpus(std::move(a));
}

struct PlantedTopics {
    std::vector<LdaDocument> docs;
    std::vector<std::vector<std::string>> topic_words;
};

// Disjoint vocabularies per topic; each document draws its tokens from one
// dominant topic with probability `purity`, otherwise from a uniformly chosen
// topic.
inline PlantedTopics planted_topic_corpus(std::uint64_t seed, std::size_t num_docs = 300, std::size_t tokens = 50,
                                          std::size_t topics = 3, std::size_t words_per_topic = 20,
                                          double purity = 0.8) {
    PlantedTopics p;
    for (std::size_t t = 0; t < topics; ++t) {
        std::vector<std::string> words;
        for (std::size_t w = 0; w < words_per_topic; ++w) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "t%zuw%02zu", t, w);
            words.emplace_back(buf);
        }
        p.topic_words.push_back(std::move(words));
    }
    Rng rng(seed);
    for (std::size_t d = 0; d < num_docs; ++d) {
        LdaDocument doc;
        char id[32];
        std::snprintf(id, sizeof id, "doc%04zu", d);
        doc.id = id;
        const std::size_t dominant = rng.index(topics);
        for (std::size_t i = 0; i < tokens; ++i) {
            const std::size_t t = rng.uniform() < purity ? dominant : rng.index(topics);
            doc.words.push_back(p.topic_words[t][rng.index(words_per_topic)]);
        }
        p.docs.push_back(std::move(doc));
    }
    return p;
}

// Documents made only of entity chains; strongly ordered local coherence.
inline Corpus coherent_corpus(std::uint64_t seed, std::size_t docs = 200, std::size_t min_sentences = 6,
                              std::size_t max_sentences = 9, const std::string& label = "coherent") {
    Rng rng(seed);
    std::vector<Document> out;
    for (std::size_t i = 0; i < docs; ++i) {
        const auto& pool = themes()[rng.index(themes().size())];
        const std::size_t n = min_sentences + rng.index(max_sentences - min_sentences + 1);
        auto chain = entity_chain(rng, pool, n);
        std::string text;
        for (std::size_t k = 0; k < n; ++k) {
            if (k) text += '\n';
            text += render(chain[k]);
        }
        char id[32];
        std::snprintf(id, sizeof id, "c%04zu", i);
        out.push_back(Document::from_text(id, "author" + std::to_string(i % 25), label, "synthetic", text));
    }
    return Corpus(std::move(out));
}

// Every document with its sentences in a seeded random order.
inline Corpus scrambled(const Corpus& corpus, std::uint64_t seed) {
    std::vector<Document> out;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        Rng rng(derive_seed(seed, i));
        auto d = corpus[i];
        std::vector<std::size_t> order(d.sentences.size());
        for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
        rng.shuffle(order);
        std::vector<Sentence> s;
        for (auto k : order) s.push_back(d.sentences[k]);
        d.sentences = std::move(s);
        out.push_back(std::move(d));
    }
    return Corpus(std::move(out));
}

}  // namespace storyscope::synthetic
