#pragma once

// Entity-grid local coherence: grid construction with a heuristic role
// assigner, a transition model over role histories, and the binary
// discrimination test against random sentence permutations.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/corpus.hpp"
#include "storyscope/rng.hpp"
#include "storyscope/tagger.hpp"

namespace storyscope {

// Ordered by salience: S > O > X > absent.
enum class Role : std::uint8_t { subject = 0, object = 1, other = 2, absent = 3 };

inline constexpr std::size_t kRoles = 4;

inline char role_char(Role r) {
    switch (r) {
        case Role::subject: return 'S';
        case Role::object: return 'O';
        case Role::other: return 'X';
        default: return '-';
    }
}

struct EntityGrid {
    std::string doc_id;
    std::vector<std::string> entities;   // first-mention order
    std::vector<std::vector<Role>> rows;  // entities x sentences
    std::size_t sentences = 0;

    bool empty() const { return entities.empty(); }

    std::string row_string(std::size_t e) const {
        std::string s;
        for (auto r : rows.at(e)) s += role_char(r);
        return s;
    }

    std::size_t entity_index(const std::string& name) const {
        auto it = std::find(entities.begin(), entities.end(), name);
        if (it == entities.end()) throw std::invalid_argument("entity \"" + name + "\" not in grid");
        return static_cast<std::size_t>(it - entities.begin());
    }
};

// Entities are nouns (lexicon tagger) with exact-string coreference. Within a
// sentence, the first noun counts as subject when it precedes the first verb,
// the first noun after that verb is the object, every other noun mention is X.
// Sentences without a verb give X to all their nouns. Several mentions of one
// entity in a sentence keep the most salient role.
inline EntityGrid build_entity_grid(const Document& doc, const LexiconTagger& tagger = LexiconTagger::bundled()) {
    EntityGrid g;
    g.doc_id = doc.id;
    g.sentences = doc.sentences.size();
    std::map<std::string, std::size_t> index;
    for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
        const auto& s = doc.sentences[si];
        std::vector<Pos> tags;
        tags.reserve(s.size());
        for (const auto& t : s) tags.push_back(tagger.tag(to_lower(t)));
        std::size_t verb = s.size();
        for (std::size_t i = 0; i < s.size(); ++i)
            if (tags[i] == Pos::verb || tags[i] == Pos::auxiliary) { verb = i; break; }
        std::size_t first_noun = s.size();
        std::size_t object_noun = s.size();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (tags[i] != Pos::noun) continue;
            if (first_noun == s.size()) first_noun = i;
            if (verb < s.size() && i > verb && object_noun == s.size()) object_noun = i;
        }
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (tags[i] != Pos::noun) continue;
            Role role = Role::other;
            if (verb < s.size()) {
                if (i == first_noun && i < verb) role = Role::subject;
                else if (i == object_noun) role = Role::object;
            }
            const std::string key = to_lower(s[i]);
            auto [it, fresh] = index.try_emplace(key, g.entities.size());
            if (fresh) {
                g.entities.push_back(key);
                g.rows.emplace_back(g.sentences, Role::absent);
            }
            auto& cell = g.rows[it->second][si];
            if (static_cast<int>(role) < static_cast<int>(cell)) cell = role;
        }
    }
    return g;
}

// Transition model P(role | previous h roles), rows left-padded with h
// absent cells.
class EgridModel {
public:
    static constexpr std::size_t kMaxHistory = 6;

    EgridModel(std::size_t history, double smoothing) : h_(history), smoothing_(smoothing) {
        if (h_ < 1) throw std::invalid_argument("egrid: history length must be >= 1");
        if (h_ > kMaxHistory) throw std::invalid_argument("egrid: history length too large");
        if (!(smoothing_ >= 0.0)) throw std::invalid_argument("egrid: smoothing must be >= 0");
        std::size_t histories = 1;
        for (std::size_t i = 0; i < h_; ++i) histories *= kRoles;
        counts_.assign(histories * kRoles, 0.0);
    }

    std::size_t history() const { return h_; }
    double smoothing() const { return smoothing_; }
    std::size_t num_histories() const { return counts_.size() / kRoles; }

    // Index of every (history, next role) window of a grid row.
    template <typename F>
    void for_each_transition(const std::vector<Role>& row, F&& f) const {
        std::size_t hist = history_of_padding();
        const std::size_t mod = num_histories();
        for (auto r : row) {
            f(hist, static_cast<std::size_t>(r));
            hist = (hist * kRoles + static_cast<std::size_t>(r)) % mod;
        }
    }

    void observe(const EntityGrid& g) {
        for (const auto& row : g.rows)
            for_each_transition(row, [&](std::size_t hist, std::size_t r) { counts_[hist * kRoles + r] += 1.0; });
    }

    // (count + s) / (total + 4 s); a history with no mass at all is uniform.
    double probability(std::size_t hist, std::size_t role) const {
        double total = 0.0;
        for (std::size_t r = 0; r < kRoles; ++r) total += counts_[hist * kRoles + r];
        const double denom = total + kRoles * smoothing_;
        if (denom <= 0.0) return 1.0 / kRoles;
        return (counts_[hist * kRoles + role] + smoothing_) / denom;
    }

    std::size_t encode(const std::vector<Role>& history) const {
        if (history.size() != h_) throw std::invalid_argument("egrid: history length mismatch");
        std::size_t code = 0;
        for (auto r : history) code = code * kRoles + static_cast<std::size_t>(r);
        return code;
    }

    double probability(const std::vector<Role>& history, Role next) const {
        return probability(encode(history), static_cast<std::size_t>(next));
    }

private:
    std::size_t history_of_padding() const {
        std::size_t code = 0;
        for (std::size_t i = 0; i < h_; ++i) code = code * kRoles + static_cast<std::size_t>(Role::absent);
        return code;
    }

    std::size_t h_;
    double smoothing_;
    std::vector<double> counts_;  // histories x roles
};

inline EgridModel train_egrid(const std::vector<EntityGrid>& grids, std::size_t history = 2, double smoothing = 1.0) {
    EgridModel m(history, smoothing);
    const bool any = std::any_of(grids.begin(), grids.end(), [](const auto& g) { return !g.empty(); });
    if (!any) throw std::invalid_argument("train_egrid: no non-empty grid");
    for (const auto& g : grids) m.observe(g);
    return m;
}

struct GridScore {
    double mean_log_prob = 0.0;
    std::size_t transitions = 0;
    bool empty = false;
};

// Mean log-probability per transition. Transitions are tallied first and
// summed in a fixed order, so grids with the same transition multiset score
// bit-identically whatever their row and column order.
inline GridScore score_grid(const EgridModel& model, const EntityGrid& grid) {
    GridScore s;
    if (grid.empty()) {
        s.empty = true;
        return s;
    }
    std::vector<std::size_t> tally(model.num_histories() * kRoles, 0);
    for (const auto& row : grid.rows)
        model.for_each_transition(row, [&](std::size_t hist, std::size_t r) { ++tally[hist * kRoles + r]; });
    double sum = 0.0;
    for (std::size_t k = 0; k < tally.size(); ++k) {
        if (tally[k] == 0) continue;
        sum += static_cast<double>(tally[k]) * std::log(model.probability(k / kRoles, k % kRoles));
        s.transitions += tally[k];
    }
    s.mean_log_prob = sum / static_cast<double>(s.transitions);
    return s;
}

inline Document permute_sentences(const Document& doc, const std::vector<std::size_t>& order) {
    Document out = doc;
    out.sentences.clear();
    for (auto i : order) out.sentences.push_back(doc.sentences.at(i));
    return out;
}

struct DiscriminationOutcome {
    std::size_t wins = 0, ties = 0, losses = 0;
    double original_score = 0.0;
    std::vector<std::vector<std::size_t>> permutations;
    std::vector<double> permuted_scores;
};

// n_perm uniform permutations from Rng(seed) (identity draws included).
// Win: the original order scores strictly higher.
inline DiscriminationOutcome discrimination_test(const EgridModel& model, const Document& doc,
                                                 std::size_t n_perm = 20, std::uint64_t seed = 0,
                                                 const LexiconTagger& tagger = LexiconTagger::bundled()) {
    if (doc.sentences.empty()) throw std::invalid_argument("discrimination_test: document has no sentences");
    DiscriminationOutcome o;
    o.original_score = score_grid(model, build_entity_grid(doc, tagger)).mean_log_prob;
    Rng rng(seed);
    for (std::size_t k = 0; k < n_perm; ++k) {
        auto order = rng.permutation(doc.sentences.size());
        const double s = score_grid(model, build_entity_grid(permute_sentences(doc, order), tagger)).mean_log_prob;
        if (o.original_score > s) ++o.wins;
        else if (o.original_score == s) ++o.ties;
        else ++o.losses;
        o.permutations.push_back(std::move(order));
        o.permuted_scores.push_back(s);
    }
    return o;
}

struct DiscriminationReport {
    std::size_t docs = 0;
    std::size_t wins = 0, ties = 0, losses = 0;
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f_score = 0.0;
    bool f_defined = true;

    std::size_t pairs() const { return wins + ties + losses; }
};

// Pooled over documents. Ties fail accuracy and recall and are left out of
// precision (wins over decided pairs).
inline DiscriminationReport discrimination_report(const std::vector<DiscriminationOutcome>& outcomes) {
    DiscriminationReport r;
    r.docs = outcomes.size();
    for (const auto& o : outcomes) {
        r.wins += o.wins;
        r.ties += o.ties;
        r.losses += o.losses;
    }
    if (r.pairs() == 0) throw std::invalid_argument("discrimination_report: no permutation pairs");
    const double all = static_cast<double>(r.pairs());
    r.accuracy = static_cast<double>(r.wins) / all;
    r.recall = r.accuracy;
    const std::size_t decided = r.wins + r.losses;
    r.precision = decided ? static_cast<double>(r.wins) / static_cast<double>(decided) : 0.0;
    if (r.precision + r.recall > 0.0) {
        r.f_score = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    } else {
        r.f_score = 0.0;
        r.f_defined = decided > 0;
    }
    return r;
}

// One outcome per document, seeds derived from (seed, document index).
inline std::vector<DiscriminationOutcome> discriminate_corpus(const EgridModel& model, const Corpus& corpus,
                                                              std::size_t n_perm, std::uint64_t seed) {
    std::vector<DiscriminationOutcome> out;
    out.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i)
        out.push_back(discrimination_test(model, corpus[i], n_perm, derive_seed(seed, i)));
    return out;
}

}  // namespace storyscope
