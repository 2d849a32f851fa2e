#pragma once

// Documents, corpora, JSONL ingestion and the cleaning/sampling steps that
// turn raw collections into balanced samples.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <json.hpp>

#include "storyscope/resources.hpp"
#include "storyscope/rng.hpp"
#include "storyscope/text.hpp"

namespace storyscope {

struct Document {
    std::string id;
    std::string author_id;
    std::string label;
    std::string source;
    std::string raw_text;
    std::vector<Sentence> sentences;
    std::size_t token_count = 0;

    static Document from_text(std::string id, std::string author, std::string label,
                              std::string source, std::string text) {
        Document d;
        d.id = std::move(id);
        d.author_id = std::move(author);
        d.label = std::move(label);
        d.source = std::move(source);
        d.sentences = segment(text);
        d.raw_text = std::move(text);
        d.recount();
        return d;
    }

    void recount() {
        token_count = 0;
        for (const auto& s : sentences) token_count += s.size();
    }

    std::vector<Token> tokens() const {
        std::vector<Token> out;
        out.reserve(token_count);
        for (const auto& s : sentences) out.insert(out.end(), s.begin(), s.end());
        return out;
    }
};

// Immutable ordered collection of documents with unique ids.
class Corpus {
public:
    Corpus() = default;

    explicit Corpus(std::vector<Document> docs) : documents_(std::move(docs)) {
        std::unordered_set<std::string> ids;
        for (const auto& d : documents_) {
            if (!ids.insert(d.id).second)
                throw std::invalid_argument("duplicate document id in corpus: " + d.id);
            labels_.insert(d.label);
            total_tokens_ += d.token_count;
        }
    }

    const std::vector<Document>& documents() const { return documents_; }
    const std::set<std::string>& labels() const { return labels_; }
    std::size_t total_tokens() const { return total_tokens_; }
    std::size_t size() const { return documents_.size(); }
    bool empty() const { return documents_.empty(); }
    const Document& operator[](std::size_t i) const { return documents_[i]; }
    const Document& at(std::size_t i) const { return documents_.at(i); }

    auto begin() const { return documents_.begin(); }
    auto end() const { return documents_.end(); }

    Corpus with_label(const std::string& label) const {
        std::vector<Document> out;
        for (const auto& d : documents_)
            if (d.label == label) out.push_back(d);
        return Corpus(std::move(out));
    }

    static Corpus concat(const std::vector<Corpus>& parts) {
        std::vector<Document> out;
        for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
        return Corpus(std::move(out));
    }

private:
    std::vector<Document> documents_;
    std::set<std::string> labels_;
    std::size_t total_tokens_ = 0;
};

struct Diagnostic {
    std::size_t line = 0;  // 1-based; 0 when not tied to an input line
    std::string message;
};

struct IngestResult {
    Corpus corpus;
    std::vector<Diagnostic> errors;
    std::vector<Diagnostic> warnings;
};

// One JSON object per line with string fields id, author, label, source, text.
// Bad lines become errors; a repeated id keeps the first record and warns.
// Records whose text has no tokens are reported as errors.
inline IngestResult ingest_jsonl(std::istream& in) {
    IngestResult result;
    std::vector<Document> docs;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    static const char* const kFields[] = {"id", "author", "label", "source", "text"};
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (std::all_of(line.begin(), line.end(), is_ascii_space)) continue;
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            result.errors.push_back({lineno, std::string("malformed JSON: ") + e.what()});
            continue;
        }
        if (!rec.is_object()) {
            result.errors.push_back({lineno, "record is not a JSON object"});
            continue;
        }
        std::string problem;
        for (const char* f : kFields) {
            auto it = rec.find(f);
            if (it == rec.end()) {
                problem = std::string("missing field \"") + f + "\"";
                break;
            }
            if (!it->is_string()) {
                problem = std::string("field \"") + f + "\" is not a string";
                break;
            }
        }
        if (!problem.empty()) {
            result.errors.push_back({lineno, problem});
            continue;
        }
        auto id = rec["id"].get<std::string>();
        if (seen.count(id)) {
            result.warnings.push_back({lineno, "duplicate id \"" + id + "\" rejected"});
            continue;
        }
        Document d = Document::from_text(id, rec["author"].get<std::string>(),
                                         rec["label"].get<std::string>(),
                                         rec["source"].get<std::string>(),
                                         rec["text"].get<std::string>());
        if (d.token_count == 0) {
            result.errors.push_back({lineno, "document \"" + id + "\" has no tokens"});
            continue;
        }
        seen.insert(id);
        docs.push_back(std::move(d));
    }
    result.corpus = Corpus(std::move(docs));
    return result;
}

// Writes the ingestion schema back out. Tokenized sentences are joined with
// single spaces and newlines, so re-ingesting reproduces the same sentences.
inline void write_jsonl(std::ostream& out, const Corpus& corpus) {
    for (const auto& d : corpus) {
        std::vector<std::string> lines;
        lines.reserve(d.sentences.size());
        for (const auto& s : d.sentences) lines.push_back(join(s, " "));
        nlohmann::ordered_json rec;
        rec["id"] = d.id;
        rec["author"] = d.author_id;
        rec["label"] = d.label;
        rec["source"] = d.source;
        rec["text"] = join(lines, "\n");
        out << rec.dump() << '\n';
    }
}

struct FilterResult {
    Corpus corpus;
    std::size_t removed = 0;
    std::vector<std::string> removed_ids;
};

inline const WordSet& default_stopwords() {
    static const WordSet set = make_word_set(resources::kStopwordsEn);
    return set;
}

inline double stopword_ratio(const Document& doc, const WordSet& stopwords) {
    if (doc.token_count == 0) return 0.0;
    std::size_t hits = 0;
    for (const auto& s : doc.sentences)
        for (const auto& t : s) hits += stopwords.count(t);
    return static_cast<double>(hits) / static_cast<double>(doc.token_count);
}

inline constexpr double kDefaultEnglishThreshold = 0.15;

// Keeps documents whose stopword ratio is at least the threshold. Empty
// documents are always removed.
inline FilterResult filter_english(const Corpus& corpus, double threshold,
                                   const WordSet& stopwords = default_stopwords()) {
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw std::invalid_argument("filter_english: threshold must lie in [0, 1]");
    FilterResult r;
    std::vector<Document> kept;
    for (const auto& d : corpus) {
        if (d.token_count > 0 && stopword_ratio(d, stopwords) >= threshold) {
            kept.push_back(d);
        } else {
            ++r.removed;
            r.removed_ids.push_back(d.id);
        }
    }
    r.corpus = Corpus(std::move(kept));
    return r;
}

inline FilterResult dedup_exact(const Corpus& corpus) {
    FilterResult r;
    std::vector<Document> kept;
    std::set<std::vector<Sentence>> seen;
    for (const auto& d : corpus) {
        if (seen.insert(d.sentences).second) {
            kept.push_back(d);
        } else {
            ++r.removed;
            r.removed_ids.push_back(d.id);
        }
    }
    r.corpus = Corpus(std::move(kept));
    return r;
}

// Authors with more than n documents keep a uniformly random n of them.
// Authors are visited in order of first appearance, each drawing from a single
// generator seeded once; kept documents stay in input order.
inline Corpus cap_per_author(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("cap_per_author: n must be >= 1");
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_author;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        auto [it, fresh] = by_author.try_emplace(corpus[i].author_id);
        if (fresh) order.push_back(corpus[i].author_id);
        it->second.push_back(i);
    }
    Rng rng(seed);
    std::vector<bool> keep(corpus.size(), false);
    for (const auto& author : order) {
        auto idx = by_author[author];
        if (idx.size() > n) {
            rng.shuffle(idx);
            idx.resize(n);
        }
        for (auto i : idx) keep[i] = true;
    }
    std::vector<Document> out;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (keep[i]) out.push_back(corpus[i]);
    return Corpus(std::move(out));
}

struct DownsampleResult {
    Corpus corpus;
    std::vector<std::string> warnings;
};

// Walks the documents in the given order and stops at the first one that
// would push the total over budget. Output keeps input order.
inline DownsampleResult downsample_in_order(const Corpus& corpus, std::size_t budget,
                                            const std::vector<std::size_t>& order) {
    if (budget < 1) throw std::invalid_argument("downsample_to_tokens: budget must be >= 1");
    std::vector<bool> keep(corpus.size(), false);
    std::size_t total = 0;
    for (auto i : order) {
        const std::size_t len = corpus.at(i).token_count;
        if (total + len > budget) break;
        total += len;
        keep[i] = true;
    }
    DownsampleResult r;
    std::vector<Document> out;
    for (std::size_t i = 0; i < corpus.size(); ++i)
        if (keep[i]) out.push_back(corpus[i]);
    r.corpus = Corpus(std::move(out));
    if (r.corpus.empty() && !corpus.empty())
        r.warnings.push_back("token budget " + std::to_string(budget) +
                             " admits no document; result is empty");
    return r;
}

inline DownsampleResult downsample_to_tokens(const Corpus& corpus, std::size_t budget,
                                             std::uint64_t seed) {
    Rng rng(seed);
    return downsample_in_order(corpus, budget, rng.permutation(corpus.size()));
}

struct CorpusStats {
    std::size_t doc_count = 0;
    std::size_t total_tokens = 0;
    double mean_doc_len = 0.0;
    double pop_stddev_doc_len = 0.0;
};

// Population form: the variance divides by N.
inline CorpusStats corpus_stats(const Corpus& corpus) {
    CorpusStats s;
    s.doc_count = corpus.size();
    s.total_tokens = corpus.total_tokens();
    if (s.doc_count == 0) return s;
    const double n = static_cast<double>(s.doc_count);
    s.mean_doc_len = static_cast<double>(s.total_tokens) / n;
    double ss = 0.0;
    for (const auto& d : corpus) {
        const double dev = static_cast<double>(d.token_count) - s.mean_doc_len;
        ss += dev * dev;
    }
    s.pop_stddev_doc_len = std::sqrt(ss / n);
    return s;
}

}  // namespace storyscope
