#pragma once

// Tokenization, sentence segmentation and word-list loading.

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace storyscope {

using Token = std::string;
using Sentence = std::vector<Token>;

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        // ASCII only; UTF-8 continuation bytes pass through untouched.
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

inline bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline bool is_punct_char(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

// A token that carries no letter or digit (".", "?", "...", ",").
inline bool is_punctuation_token(std::string_view tok) {
    return !tok.empty() &&
           std::all_of(tok.begin(), tok.end(), [](char c) { return is_punct_char(c); });
}

inline constexpr std::array<std::string_view, 5> kEmoticons = {":)", ":(", ":D", ";)", ":P"};

namespace detail {

inline std::string_view match_emoticon(std::string_view s) {
    for (auto e : kEmoticons) {
        if (s.size() != e.size()) continue;
        bool same = true;
        for (std::size_t i = 0; i < s.size() && same; ++i) {
            same = std::tolower(static_cast<unsigned char>(s[i])) ==
                   std::tolower(static_cast<unsigned char>(e[i]));
        }
        if (same) return e;
    }
    return {};
}

// Length of the punctuation unit at the front of s: a run of dots (ellipsis)
// or one punctuation character.
inline std::size_t leading_unit(std::string_view s) {
    if (s.front() == '.') {
        std::size_t n = 1;
        while (n < s.size() && s[n] == '.') ++n;
        return n;
    }
    return 1;
}

inline std::size_t trailing_unit(std::string_view s) {
    if (s.back() == '.') {
        std::size_t n = 1;
        while (n < s.size() && s[s.size() - 1 - n] == '.') ++n;
        return n;
    }
    return 1;
}

inline void split_chunk(std::string_view chunk, std::vector<Token>& out) {
    if (auto e = match_emoticon(chunk); !e.empty()) {
        out.emplace_back(e);
        return;
    }
    std::vector<std::string> head;
    std::vector<std::string> tail;
    // Leading punctuation, one unit at a time.
    while (!chunk.empty() && is_punct_char(chunk.front())) {
        if (auto e = match_emoticon(chunk.substr(0, 2)); !e.empty() && chunk.size() >= 2) {
            head.emplace_back(e);
            chunk.remove_prefix(2);
            continue;
        }
        const std::size_t n = leading_unit(chunk);
        head.emplace_back(chunk.substr(0, n));
        chunk.remove_prefix(n);
    }
    // Trailing punctuation, including an emoticon glued to the word ("late:)").
    while (!chunk.empty() && is_punct_char(chunk.back())) {
        if (chunk.size() > 2) {
            if (auto e = match_emoticon(chunk.substr(chunk.size() - 2)); !e.empty()) {
                tail.emplace_back(e);
                chunk.remove_suffix(2);
                continue;
            }
        }
        const std::size_t n = trailing_unit(chunk);
        tail.emplace_back(chunk.substr(chunk.size() - n));
        chunk.remove_suffix(n);
    }
    for (auto& h : head) out.push_back(std::move(h));
    if (!chunk.empty()) out.push_back(to_lower(chunk));
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(std::move(*it));
}

}  // namespace detail

// Whitespace split, then leading/trailing punctuation is detached one unit at
// a time. Word-internal punctuation survives ("it's", "3.5", "e-mail"), runs
// of dots stay together as an ellipsis, and the emoticons in kEmoticons are
// single tokens in their canonical spelling. Everything else is lowercased.
inline std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i])) ++i;
        if (i > start) detail::split_chunk(text.substr(start, i - start), out);
    }
    return out;
}

// Lines are sentences. A text without any newline falls back to splitting
// after '.', '?' or '!' followed by whitespace. Blank lines are dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    auto push = [&out](std::string_view s) {
        const bool blank = std::all_of(s.begin(), s.end(), is_ascii_space);
        if (!blank) out.emplace_back(s);
    };
    if (text.find('\n') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const std::size_t nl = text.find('\n', start);
            const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
            push(text.substr(start, end - start));
            if (nl == std::string_view::npos) break;
            start = nl + 1;
        }
        return out;
    }
    std::size_t start = 0;
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        const char c = text[i];
        if ((c == '.' || c == '?' || c == '!') && is_ascii_space(text[i + 1])) {
            push(text.substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    if (start < text.size()) push(text.substr(start));
    return out;
}

// Tokenized sentences with empty ones removed.
inline std::vector<Sentence> segment(std::string_view text) {
    std::vector<Sentence> out;
    for (const auto& s : split_sentences(text)) {
        auto toks = tokenize(s);
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

// One entry per line; blank lines and lines starting with '#' are skipped.
inline std::vector<std::string> parse_word_lines(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t b = 0;
        while (b < line.size() && is_ascii_space(line[b])) ++b;
        std::size_t e = line.size();
        while (e > b && is_ascii_space(line[e - 1])) --e;
        if (e == b || line[b] == '#') continue;
        out.push_back(line.substr(b, e - b));
    }
    return out;
}

using WordSet = std::unordered_set<std::string>;

inline WordSet make_word_set(std::string_view text) {
    WordSet set;
    for (auto& w : parse_word_lines(text)) set.insert(to_lower(w));
    return set;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace storyscope
