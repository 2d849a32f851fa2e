#pragma once

// Word n-gram features: extraction, blocklist filtering, top-k vocabulary
// selection and binary vectorization.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/resources.hpp"
#include "storyscope/text.hpp"

namespace storyscope {

// Token sequence; compares lexicographically token by token.
using Ngram = std::vector<Token>;

inline std::string ngram_string(const Ngram& g) { return join(g, "_"); }

struct NgramHash {
    std::size_t operator()(const Ngram& g) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const auto& t : g) {
            h ^= std::hash<std::string>{}(t) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using NgramCounts = std::unordered_map<Ngram, std::size_t, NgramHash>;

// Contiguous n-grams of order 1..n_max inside each sentence.
inline NgramCounts extract_ngrams(const Document& doc, std::size_t n_max = 3) {
    if (n_max < 1) throw std::invalid_argument("extract_ngrams: n_max must be >= 1");
    NgramCounts counts;
    for (const auto& s : doc.sentences) {
        for (std::size_t n = 1; n <= n_max; ++n) {
            if (s.size() < n) break;
            for (std::size_t i = 0; i + n <= s.size(); ++i) {
                Ngram g;
                g.reserve(n);
                for (std::size_t j = i; j < i + n; ++j) g.push_back(to_lower(s[j]));
                ++counts[std::move(g)];
            }
        }
    }
    return counts;
}

struct Blocklist {
    WordSet words;

    static Blocklist dream_words() { return Blocklist{make_word_set(resources::kDreamBlocklist)}; }
    static Blocklist from_text(std::string_view text) { return Blocklist{make_word_set(text)}; }

    bool blocks(const Ngram& g) const {
        return std::any_of(g.begin(), g.end(), [this](const Token& t) { return words.count(t) > 0; });
    }
};

// Drops n-grams with a blocklisted token (whole-token match only).
inline NgramCounts apply_blocklist(NgramCounts ngrams, const Blocklist& blocklist) {
    if (blocklist.words.empty()) return ngrams;
    std::erase_if(ngrams, [&](const auto& kv) { return blocklist.blocks(kv.first); });
    return ngrams;
}

enum class FrequencyMode {
    corpus,    // total occurrences across the training documents
    document,  // number of training documents containing the n-gram
};

class Vocabulary {
public:
    Vocabulary() = default;

    // Entries must already be in index order.
    Vocabulary(std::vector<Ngram> entries, std::vector<std::size_t> freq, std::size_t k)
        : entries_(std::move(entries)), freq_(std::move(freq)), k_(k) {
        if (freq_.size() != entries_.size())
            throw std::invalid_argument("Vocabulary: frequency table size mismatch");
        index_.reserve(entries_.size());
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (!index_.emplace(entries_[i], static_cast<std::uint32_t>(i)).second)
                throw std::invalid_argument("Vocabulary: duplicate entry " + ngram_string(entries_[i]));
        }
    }

    std::size_t size() const { return entries_.size(); }
    std::size_t k() const { return k_; }
    const Ngram& entry(std::size_t i) const { return entries_.at(i); }
    std::size_t train_frequency(std::size_t i) const { return freq_.at(i); }
    const std::vector<Ngram>& entries() const { return entries_; }

    std::optional<std::uint32_t> find(const Ngram& g) const {
        auto it = index_.find(g);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // FNV-1a over the entries (0x1f between tokens, 0x1e between entries); ties a
    // saved model to its vocabulary.
    std::uint64_t hash() const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        auto mix = [&h](unsigned char c) {
            h ^= c;
            h *= 0x100000001b3ULL;
        };
        for (const auto& e : entries_) {
            for (const auto& t : e) {
                for (char c : t) mix(static_cast<unsigned char>(c));
                mix(0x1f);
            }
            mix(0x1e);
        }
        return h;
    }

    void write_tsv(std::ostream& out) const {
        out << "index\tngram\ttrain_frequency\n";
        for (std::size_t i = 0; i < entries_.size(); ++i)
            out << i << '\t' << ngram_string(entries_[i]) << '\t' << freq_[i] << '\n';
    }

private:
    std::vector<Ngram> entries_;
    std::vector<std::size_t> freq_;
    std::unordered_map<Ngram, std::uint32_t, NgramHash> index_;
    std::size_t k_ = 0;
};

struct VocabularyResult {
    Vocabulary vocabulary;
    std::vector<std::string> warnings;
};

// The k most frequent counts, ties broken by lexicographic n-gram order.
// Indices follow the resulting rank order.
inline VocabularyResult select_top_k_from_counts(const NgramCounts& counts, std::size_t k) {
    if (k < 1) throw std::invalid_argument("select_top_k: k must be >= 1");
    std::vector<std::pair<const Ngram*, std::size_t>> ranked;
    ranked.reserve(counts.size());
    for (const auto& [g, c] : counts) ranked.emplace_back(&g, c);
    auto better = [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return *a.first < *b.first;
    };
    VocabularyResult r;
    if (ranked.size() > k) {
        std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k),
                          ranked.end(), better);
        ranked.resize(k);
    } else {
        std::sort(ranked.begin(), ranked.end(), better);
        if (ranked.size() < k)
            r.warnings.push_back("only " + std::to_string(ranked.size()) +
                                 " n-grams available for k = " + std::to_string(k));
    }
    std::vector<Ngram> entries;
    std::vector<std::size_t> freq;
    for (const auto& [g, c] : ranked) {
        entries.push_back(*g);
        freq.push_back(c);
    }
    r.vocabulary = Vocabulary(std::move(entries), std::move(freq), k);
    return r;
}

// Sums per-document (already blocklist-filtered) n-gram counts.
inline NgramCounts aggregate_counts(const std::vector<const NgramCounts*>& docs,
                                    FrequencyMode mode) {
    NgramCounts total;
    for (const auto* d : docs)
        for (const auto& [g, c] : *d) total[g] += (mode == FrequencyMode::corpus ? c : 1);
    return total;
}

inline VocabularyResult select_top_k(const Corpus& train_docs, std::size_t k, std::size_t n_max,
                                     const Blocklist& blocklist,
                                     FrequencyMode mode = FrequencyMode::corpus) {
    std::vector<NgramCounts> per_doc;
    per_doc.reserve(train_docs.size());
    for (const auto& d : train_docs) per_doc.push_back(apply_blocklist(extract_ngrams(d, n_max), blocklist));
    std::vector<const NgramCounts*> ptrs;
    for (const auto& c : per_doc) ptrs.push_back(&c);
    return select_top_k_from_counts(aggregate_counts(ptrs, mode), k);
}

using FeatureIndex = std::uint32_t;

struct FeatureVector {
    std::string doc_id;
    std::vector<FeatureIndex> active;  // sorted, unique
};

inline FeatureVector vectorize_counts(const std::string& doc_id, const NgramCounts& ngrams,
                                      const Vocabulary& vocab) {
    FeatureVector v{doc_id, {}};
    for (const auto& [g, c] : ngrams) {
        if (c == 0) continue;
        if (auto idx = vocab.find(g)) v.active.push_back(*idx);
    }
    std::sort(v.active.begin(), v.active.end());
    v.active.erase(std::unique(v.active.begin(), v.active.end()), v.active.end());
    return v;
}

// Binary presence of vocabulary n-grams; n-gram orders follow the vocabulary.
inline FeatureVector vectorize(const Document& doc, const Vocabulary& vocab, std::size_t n_max = 3) {
    return vectorize_counts(doc.id, extract_ngrams(doc, n_max), vocab);
}

}  // namespace storyscope
