#pragma once

// Shared vocabulary of the binary classifiers.

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyscope/features.hpp"

namespace storyscope {

struct LabeledVector {
    FeatureVector x;
    std::string label;
};

// The two genre tags of a binary task. `names` is sorted, so index 0 is the
// lexicographically smaller label; `positive` selects which one the
// continuous prediction score is oriented towards.
struct BinaryLabels {
    std::array<std::string, 2> names;
    std::size_t positive = 0;

    std::size_t index_of(const std::string& label) const {
        if (label == names[0]) return 0;
        if (label == names[1]) return 1;
        throw std::invalid_argument("label \"" + label + "\" is not one of the model's classes");
    }
    const std::string& positive_label() const { return names[positive]; }
    const std::string& negative_label() const { return names[1 - positive]; }

    // Exactly two distinct labels must occur. An empty positive_label picks
    // the lexicographically smaller one.
    static BinaryLabels from_examples(const std::vector<LabeledVector>& examples,
                                      const std::string& positive_label = {}) {
        std::set<std::string> seen;
        for (const auto& e : examples) seen.insert(e.label);
        if (seen.size() != 2)
            throw std::invalid_argument("binary classifier needs exactly two labels, got " +
                                        std::to_string(seen.size()));
        BinaryLabels l;
        l.names = {*seen.begin(), *std::next(seen.begin())};
        if (!positive_label.empty()) l.positive = l.index_of(positive_label);
        return l;
    }
};

struct Prediction {
    std::string label;
    double score = 0.0;  // larger means more positive-class
};

// Relative tolerance under which two class scores count as tied.
inline bool scores_tied(double a, double b) {
    if (a == b) return true;
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// Argmax over two class scores; a tie goes to names[0].
inline Prediction decide(const BinaryLabels& labels, const std::array<double, 2>& class_score) {
    std::size_t winner = 0;
    if (!scores_tied(class_score[0], class_score[1]) && class_score[1] > class_score[0]) winner = 1;
    const std::size_t pos = labels.positive;
    double margin = class_score[pos] - class_score[1 - pos];
    if (scores_tied(class_score[0], class_score[1])) margin = 0.0;
    return {labels.names[winner], margin};
}

inline void check_indices(const FeatureVector& v, std::size_t vocab_size) {
    if (!v.active.empty() && v.active.back() >= vocab_size)
        throw std::out_of_range("feature index " + std::to_string(v.active.back()) +
                                " outside model vocabulary of size " + std::to_string(vocab_size));
}

}  // namespace storyscope
