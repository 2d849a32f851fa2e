#pragma once

// Balanced Winnow with thick thresholds.
//
// Every class keeps a pair of positive weights (w+, w-) per feature, created
// lazily as (2.0, 1.0) the first time the feature is active. The class score
// of a document with active set A is mean over A of (w+ - w-), or 0 for an
// empty A. Training visits documents in input order; for each class c:
//
//   doc in c,     score < theta_plus  -> promote: w+ *= alpha, w- *= beta
//   doc not in c, score > theta_minus -> demote:  w+ *= beta,  w- *= alpha
//
// on the active features only. Weights stay positive because every update
// multiplies by a positive factor.

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "storyscope/labels.hpp"

namespace storyscope {

struct WinnowParams {
    double alpha = 1.05;
    double beta = 0.95;
    double theta_plus = 2.5;
    double theta_minus = 0.5;
    std::size_t iterations = 1;
    double init_plus = 2.0;
    double init_minus = 1.0;

    void validate() const {
        if (!(alpha > 1.0)) throw std::invalid_argument("winnow: alpha must be > 1");
        if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("winnow: beta must lie in (0, 1)");
        if (!(init_plus > 0.0 && init_minus > 0.0))
            throw std::invalid_argument("winnow: initial weights must be positive");
        if (iterations < 1) throw std::invalid_argument("winnow: iterations must be >= 1");
    }
};

struct WinnowWeight {
    double plus = 0.0;
    double minus = 0.0;
    bool touched = false;

    double net() const { return plus - minus; }
};

struct RankedFeature {
    std::size_t rank = 0;  // 1-based
    FeatureIndex feature = 0;
    double net_weight = 0.0;
};

class WinnowModel {
public:
    WinnowModel(BinaryLabels labels, std::size_t vocab_size, WinnowParams params)
        : labels_(std::move(labels)), params_(params), vocab_size_(vocab_size) {
        params_.validate();
        for (auto& w : weights_) w.assign(vocab_size, WinnowWeight{});
    }

    const BinaryLabels& labels() const { return labels_; }
    const WinnowParams& params() const { return params_; }
    std::size_t vocab_size() const { return vocab_size_; }
    const WinnowWeight& weight(std::size_t cls, FeatureIndex f) const { return weights_.at(cls).at(f); }
    std::size_t promotions() const { return promotions_; }
    std::size_t demotions() const { return demotions_; }

    // Untouched features score with their initial net weight.
    double class_score(std::size_t cls, const FeatureVector& v) const {
        check_indices(v, vocab_size_);
        if (v.active.empty()) return 0.0;
        double sum = 0.0;
        for (auto f : v.active) {
            const auto& w = weights_[cls][f];
            sum += w.touched ? w.net() : params_.init_plus - params_.init_minus;
        }
        return sum / static_cast<double>(v.active.size());
    }

    Prediction predict(const FeatureVector& v) const {
        return decide(labels_, {class_score(0, v), class_score(1, v)});
    }

    // One online step for a single labeled document.
    void learn(const FeatureVector& v, const std::string& label) {
        check_indices(v, vocab_size_);
        const std::size_t truth = labels_.index_of(label);
        for (std::size_t c = 0; c < 2; ++c) {
            for (auto f : v.active) {
                auto& w = weights_[c][f];
                if (!w.touched) w = {params_.init_plus, params_.init_minus, true};
            }
            const double s = class_score(c, v);
            if (c == truth && s < params_.theta_plus) {
                scale(c, v, params_.alpha, params_.beta);
                ++promotions_;
            } else if (c != truth && s > params_.theta_minus) {
                scale(c, v, params_.beta, params_.alpha);
                ++demotions_;
            }
        }
    }

    // Touched features of one class by net weight, descending (ties: lower index).
    std::vector<RankedFeature> top_features(std::size_t cls, std::size_t n = 30) const {
        std::vector<RankedFeature> out;
        for (std::size_t f = 0; f < vocab_size_; ++f) {
            const auto& w = weights_.at(cls)[f];
            if (w.touched) out.push_back({0, static_cast<FeatureIndex>(f), w.net()});
        }
        std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return a.net_weight > b.net_weight;
        });
        if (out.size() > n) out.resize(n);
        for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
        return out;
    }

    // Used when loading a saved model.
    void set_weight(std::size_t cls, FeatureIndex f, double plus, double minus) {
        if (!(plus > 0.0 && minus > 0.0)) throw std::invalid_argument("winnow weights must be positive");
        weights_.at(cls).at(f) = {plus, minus, true};
    }

private:
    void scale(std::size_t c, const FeatureVector& v, double plus_factor, double minus_factor) {
        for (auto f : v.active) {
            weights_[c][f].plus *= plus_factor;
            weights_[c][f].minus *= minus_factor;
        }
    }

    BinaryLabels labels_;
    WinnowParams params_;
    std::size_t vocab_size_;
    std::array<std::vector<WinnowWeight>, 2> weights_;
    std::size_t promotions_ = 0;
    std::size_t demotions_ = 0;
};

inline WinnowModel train_winnow(const std::vector<LabeledVector>& train, std::size_t vocab_size,
                                const WinnowParams& params = {},
                                const std::string& positive_label = {}) {
    WinnowModel model(BinaryLabels::from_examples(train, positive_label), vocab_size, params);
    for (std::size_t it = 0; it < params.iterations; ++it)
        for (const auto& e : train) model.learn(e.x, e.label);
    return model;
}

}  // namespace storyscope
