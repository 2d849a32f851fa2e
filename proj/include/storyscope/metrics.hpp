#pragma once

// Pooled binary evaluation: confusion counts, precision/recall/F1 for the
// positive class, TPR/FPR, and rank-sum AUC.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace storyscope {

struct Confusion {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;

    std::size_t total() const { return tp + fp + fn + tn; }
};

struct ScoredOutcome {
    double score = 0.0;   // positive-class score
    bool actual = false;  // true for the positive class
    bool predicted = false;
};

struct FoldReport {
    std::size_t fold = 0;
    std::size_t train_docs = 0;
    std::size_t test_docs = 0;
    std::size_t vocab_size = 0;
    bool skipped = false;
    std::string note;
    Confusion confusion;
};

struct EvalReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
    double auc = 0.0;
    bool auc_defined = false;
    std::size_t n_correct = 0;
    Confusion confusion;
    std::vector<FoldReport> folds;
};

namespace detail {
inline double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}
}  // namespace detail

inline Confusion confusion_of(const std::vector<ScoredOutcome>& outcomes) {
    Confusion c;
    for (const auto& o : outcomes) {
        if (o.actual && o.predicted) ++c.tp;
        else if (!o.actual && o.predicted) ++c.fp;
        else if (o.actual && !o.predicted) ++c.fn;
        else ++c.tn;
    }
    return c;
}

// Undefined ratios (0/0) are reported as 0.
inline EvalReport metrics_from_confusion(const Confusion& c) {
    EvalReport r;
    r.confusion = c;
    r.precision = detail::ratio(c.tp, c.tp + c.fp);
    r.recall = detail::ratio(c.tp, c.tp + c.fn);
    r.f1 = (r.precision + r.recall) > 0.0 ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    r.tpr = r.recall;
    r.fpr = detail::ratio(c.fp, c.fp + c.tn);
    r.n_correct = c.tp + c.tn;
    return r;
}

// Probability that a random positive outscores a random negative, ties
// counting one half. Ranks are tracked in half units so the numerator is an
// exact integer and the result is a single correctly rounded division.
inline double auc(const std::vector<std::pair<double, bool>>& scores) {
    std::uint64_t pos = 0, neg = 0;
    for (const auto& [s, y] : scores) (y ? pos : neg) += 1;
    if (pos == 0 || neg == 0) throw std::invalid_argument("auc: both classes must be present");
    std::vector<std::pair<double, bool>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // twice the rank sum of the positives (1-based average ranks)
    std::uint64_t twice_rank_sum = 0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        std::uint64_t group_pos = 0;
        while (j < sorted.size() && sorted[j].first == sorted[i].first) {
            group_pos += sorted[j].second ? 1 : 0;
            ++j;
        }
        // average rank of positions i+1..j, doubled: (i + 1 + j)
        twice_rank_sum += group_pos * static_cast<std::uint64_t>(i + 1 + j);
        i = j;
    }
    // U = R - P(P+1)/2  ->  2U = 2R - P(P+1)
    const std::uint64_t twice_u = twice_rank_sum - pos * (pos + 1);
    return static_cast<double>(twice_u) / static_cast<double>(2 * pos * neg);
}

inline EvalReport micro_metrics(const std::vector<ScoredOutcome>& outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("micro_metrics: no predictions");
    EvalReport r = metrics_from_confusion(confusion_of(outcomes));
    std::vector<std::pair<double, bool>> scores;
    scores.reserve(outcomes.size());
    for (const auto& o : outcomes) scores.emplace_back(o.score, o.actual);
    const bool both = r.confusion.tp + r.confusion.fn > 0 && r.confusion.fp + r.confusion.tn > 0;
    if (both) {
        r.auc = auc(scores);
        r.auc_defined = true;
    }
    return r;
}

}  // namespace storyscope
