#pragma once

// Multinomial Naive Bayes over binary presence events: each active feature
// of a document counts once towards its class.
//
//   P(f | c) = (count(f, c) + s) / (total(c) + s * V)
//   P(c)     = fraction of training documents in c

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "storyscope/labels.hpp"

namespace storyscope {

class NaiveBayesModel {
public:
    NaiveBayesModel(BinaryLabels labels, std::size_t vocab_size, double smoothing)
        : labels_(std::move(labels)), vocab_size_(vocab_size), smoothing_(smoothing) {
        for (auto& l : log_likelihood_) l.assign(vocab_size, 0.0);
    }

    const BinaryLabels& labels() const { return labels_; }
    std::size_t vocab_size() const { return vocab_size_; }
    double smoothing() const { return smoothing_; }
    double log_prior(std::size_t cls) const { return log_prior_.at(cls); }
    double log_likelihood(std::size_t cls, FeatureIndex f) const { return log_likelihood_.at(cls).at(f); }

    double log_joint(std::size_t cls, const FeatureVector& v) const {
        check_indices(v, vocab_size_);
        double s = log_prior_[cls];
        for (auto f : v.active) s += log_likelihood_[cls][f];
        return s;
    }

    // P(class | v), summing to one over the two classes.
    std::array<double, 2> posterior(const FeatureVector& v) const {
        const double a = log_joint(0, v);
        const double b = log_joint(1, v);
        const double m = std::max(a, b);
        if (m == -std::numeric_limits<double>::infinity()) return {0.5, 0.5};
        const double ea = std::exp(a - m);
        const double eb = std::exp(b - m);
        return {ea / (ea + eb), eb / (ea + eb)};
    }

    // Score is the log posterior odds of the positive class.
    Prediction predict(const FeatureVector& v) const {
        return decide(labels_, {log_joint(0, v), log_joint(1, v)});
    }

    void set_log_prior(std::size_t cls, double v) { log_prior_.at(cls) = v; }
    void set_log_likelihood(std::size_t cls, FeatureIndex f, double v) { log_likelihood_.at(cls).at(f) = v; }

private:
    BinaryLabels labels_;
    std::size_t vocab_size_;
    double smoothing_;
    std::array<double, 2> log_prior_{};
    std::array<std::vector<double>, 2> log_likelihood_;
};

inline NaiveBayesModel train_nb(const std::vector<LabeledVector>& train, std::size_t vocab_size,
                                double smoothing = 1.0, const std::string& positive_label = {}) {
    if (!(smoothing >= 0.0)) throw std::invalid_argument("train_nb: smoothing must be >= 0");
    if (vocab_size == 0) throw std::invalid_argument("train_nb: empty vocabulary");
    auto labels = BinaryLabels::from_examples(train, positive_label);
    std::array<std::vector<double>, 2> count;
    for (auto& c : count) c.assign(vocab_size, 0.0);
    std::array<double, 2> total{0.0, 0.0};
    std::array<double, 2> docs{0.0, 0.0};
    for (const auto& e : train) {
        check_indices(e.x, vocab_size);
        const std::size_t c = labels.index_of(e.label);
        docs[c] += 1.0;
        for (auto f : e.x.active) count[c][f] += 1.0;
        total[c] += static_cast<double>(e.x.active.size());
    }
    NaiveBayesModel model(labels, vocab_size, smoothing);
    const double n = docs[0] + docs[1];
    const double v = static_cast<double>(vocab_size);
    for (std::size_t c = 0; c < 2; ++c) {
        model.set_log_prior(c, std::log(docs[c] / n));
        const double denom = total[c] + smoothing * v;
        for (std::size_t f = 0; f < vocab_size; ++f) {
            // 0/0 only happens with no smoothing and no events; fall back to uniform.
            const double p = denom > 0.0 ? (count[c][f] + smoothing) / denom : 1.0 / v;
            model.set_log_likelihood(c, static_cast<FeatureIndex>(f), std::log(p));
        }
    }
    return model;
}

}  // namespace storyscope
