#pragma once

// Small lexicon part-of-speech tagger: most-frequent-tag lookup in the
// bundled lexicon, then inflection stripping against the lexicon, then
// suffix rules, then "noun".

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>
#include <unordered_map>

#include "storyscope/resources.hpp"
#include "storyscope/text.hpp"

namespace storyscope {

enum class Pos { noun, verb, adjective, adverb, pronoun, determiner, preposition, conjunction, auxiliary, particle, interjection, number, punctuation };

inline Pos parse_pos(std::string_view s) {
    if (s == "N") return Pos::noun;
    if (s == "V") return Pos::verb;
    if (s == "ADJ") return Pos::adjective;
    if (s == "ADV") return Pos::adverb;
    if (s == "PRON") return Pos::pronoun;
    if (s == "DET") return Pos::determiner;
    if (s == "PREP") return Pos::preposition;
    if (s == "CONJ") return Pos::conjunction;
    if (s == "AUX") return Pos::auxiliary;
    if (s == "PART") return Pos::particle;
    if (s == "INTJ") return Pos::interjection;
    throw std::invalid_argument("unknown part-of-speech tag \"" + std::string(s) + "\"");
}

class LexiconTagger {
public:
    // Lines of "word<TAB>tag"; '#' lines are comments.
    explicit LexiconTagger(std::string_view lexicon_tsv) {
        for (const auto& line : parse_word_lines(lexicon_tsv)) {
            const auto tab = line.find('\t');
            if (tab == std::string::npos) throw std::invalid_argument("lexicon line without tab: " + line);
            lexicon_.emplace(to_lower(line.substr(0, tab)), parse_pos(line.substr(tab + 1)));
        }
    }

    static const LexiconTagger& bundled() {
        static const LexiconTagger tagger(resources::kPosLexicon);
        return tagger;
    }

    Pos tag(const std::string& word) const {
        if (is_punctuation_token(word)) return Pos::punctuation;
        if (looks_numeric(word)) return Pos::number;
        if (auto it = lexicon_.find(word); it != lexicon_.end()) return it->second;
        if (auto p = from_inflection(word)) return *p;
        return from_suffix(word);
    }

    bool is_content(Pos p) const { return p == Pos::noun || p == Pos::verb || p == Pos::adjective; }

private:
    static bool looks_numeric(const std::string& w) {
        bool digit = false;
        for (char c : w) {
            if (c >= '0' && c <= '9') digit = true;
            else if (c != '.' && c != ',' && c != '-' && c != ':' && c != '/') return false;
        }
        return digit;
    }

    static bool ends_with(const std::string& w, std::string_view suf) {
        return w.size() > suf.size() && w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
    }

    std::optional<Pos> lookup(const std::string& w) const {
        auto it = lexicon_.find(w);
        if (it == lexicon_.end()) return std::nullopt;
        return it->second;
    }

    // walks -> walk, barked -> bark, running -> run, hoped -> hope, dogs -> dog
    std::optional<Pos> from_inflection(const std::string& w) const {
        auto base_candidates = [&](std::string_view suf) {
            std::vector<std::string> out;
            if (!ends_with(w, suf)) return out;
            std::string stem = w.substr(0, w.size() - suf.size());
            out.push_back(stem);
            out.push_back(stem + "e");
            if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) out.push_back(stem.substr(0, stem.size() - 1));
            if (!stem.empty() && stem.back() == 'i') out.push_back(stem.substr(0, stem.size() - 1) + "y");
            return out;
        };
        for (std::string_view suf : {"ing", "ed"}) {
            for (const auto& b : base_candidates(suf))
                if (auto p = lookup(b); p && *p == Pos::verb) return Pos::verb;
        }
        for (std::string_view suf : {"es", "s"}) {
            for (const auto& b : base_candidates(suf)) {
                if (auto p = lookup(b); p && (*p == Pos::verb || *p == Pos::noun)) return *p;
            }
        }
        return std::nullopt;
    }

    static Pos from_suffix(const std::string& w) {
        if (ends_with(w, "ly")) return Pos::adverb;
        if (ends_with(w, "ing") || ends_with(w, "ed")) return Pos::verb;
        for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic", "al"})
            if (ends_with(w, s)) return Pos::adjective;
        return Pos::noun;
    }

    std::unordered_map<std::string, Pos> lexicon_;
};

}  // namespace storyscope
