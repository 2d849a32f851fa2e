#pragma once

// Discourse connective counting.

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/resources.hpp"

namespace storyscope {

struct Connective {
    std::vector<std::string> tokens;
    bool frequent = false;  // listed under "#@frequent" in the lexicon file

    std::string name() const { return join(tokens, " "); }
};

// Lexicon file: one connective per line, space-separated lowercase tokens,
// '#' comments. The directive comments "#@frequent" and "#@other" tag the
// entries that follow. A bare "and" is never admitted.
class MarkerLexicon {
public:
    static constexpr std::size_t kMaxTokens = 3;

    MarkerLexicon() = default;

    static MarkerLexicon parse(std::string_view text) {
        MarkerLexicon lex;
        bool frequent = false;
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.rfind("#@frequent", 0) == 0) { frequent = true; continue; }
            if (line.rfind("#@other", 0) == 0) { frequent = false; continue; }
            auto words = parse_word_lines(line);
            if (words.empty()) continue;
            lex.add(tokenize_connective(words.front()), frequent);
        }
        return lex;
    }

    static const MarkerLexicon& bundled() {
        static const MarkerLexicon lex = parse(resources::kConnectives);
        return lex;
    }

    void add(std::vector<std::string> tokens, bool frequent = false) {
        if (tokens.empty() || tokens.size() > kMaxTokens)
            throw std::invalid_argument("connectives must have 1 to 3 tokens");
        if (tokens.size() == 1 && tokens[0] == "and") return;
        if (index_.count(tokens)) return;
        index_[tokens] = entries_.size();
        entries_.push_back({std::move(tokens), frequent});
    }

    const std::vector<Connective>& entries() const { return entries_; }
    const std::vector<std::string>& excluded() const { return excluded_; }
    std::size_t size() const { return entries_.size(); }

    std::optional<std::size_t> find(const std::vector<std::string>& tokens) const {
        auto it = index_.find(tokens);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    MarkerLexicon without(const std::string& name) const {
        MarkerLexicon out;
        for (const auto& c : entries_)
            if (c.name() != name) out.add(c.tokens, c.frequent);
        return out;
    }

private:
    static std::vector<std::string> tokenize_connective(const std::string& line) {
        std::vector<std::string> toks;
        std::istringstream ss(line);
        for (std::string t; ss >> t;) toks.push_back(to_lower(t));
        return toks;
    }

    std::vector<Connective> entries_;
    std::map<std::vector<std::string>, std::size_t> index_;
    std::vector<std::string> excluded_{"and"};
};

// Counts per lexicon entry (indexed like lexicon.entries()).
// Scans left to right inside each sentence; at each position the longest
// matching connective wins and its tokens are consumed.
inline std::vector<std::size_t> count_markers_in(const std::vector<Sentence>& sentences,
                                                 const MarkerLexicon& lexicon) {
    std::vector<std::size_t> counts(lexicon.size(), 0);
    for (const auto& raw : sentences) {
        std::vector<std::string> s;
        s.reserve(raw.size());
        for (const auto& t : raw) s.push_back(to_lower(t));
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t matched = 0;
            for (std::size_t len = std::min(MarkerLexicon::kMaxTokens, s.size() - i); len >= 1; --len) {
                std::vector<std::string> window(s.begin() + static_cast<std::ptrdiff_t>(i),
                                                s.begin() + static_cast<std::ptrdiff_t>(i + len));
                if (auto idx = lexicon.find(window)) {
                    ++counts[*idx];
                    matched = len;
                    break;
                }
            }
            i += matched ? matched : 1;
        }
    }
    return counts;
}

struct MarkerProfile {
    std::string corpus_label;
    std::vector<std::string> connectives;  // lexicon order
    std::vector<std::size_t> counts;
    std::size_t total = 0;
    std::size_t corpus_tokens = 0;
    std::vector<std::pair<std::string, std::size_t>> per_document_totals;

    double rate_per_10k(std::size_t i) const {
        return corpus_tokens == 0 ? 0.0
                                  : 10000.0 * static_cast<double>(counts.at(i)) / static_cast<double>(corpus_tokens);
    }

    std::size_t count_of(const std::string& connective) const {
        for (std::size_t i = 0; i < connectives.size(); ++i)
            if (connectives[i] == connective) return counts[i];
        throw std::invalid_argument("connective \"" + connective + "\" not in profile");
    }
};

inline MarkerProfile count_markers(const Corpus& corpus, const MarkerLexicon& lexicon,
                                   const std::string& label = {}) {
    MarkerProfile p;
    p.corpus_label = label;
    for (const auto& c : lexicon.entries()) p.connectives.push_back(c.name());
    p.counts.assign(lexicon.size(), 0);
    p.corpus_tokens = corpus.total_tokens();
    for (const auto& d : corpus) {
        const auto c = count_markers_in(d.sentences, lexicon);
        std::size_t doc_total = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            p.counts[i] += c[i];
            doc_total += c[i];
        }
        p.total += doc_total;
        p.per_document_totals.emplace_back(d.id, doc_total);
    }
    return p;
}

}  // namespace storyscope
