#pragma once

// Soft-margin linear SVM:
//
//   minimize  1/2 |w|^2 + C * sum_i max(0, 1 - y_i (w . x_i + b))
//
// solved in the dual with SMO (maximal-violating-pair working set, the same
// update and clipping rules as libsvm). The bias is not regularized. Training
// stops once the KKT violation m(a) - M(a) drops to the tolerance, or after
// max_epochs * n pair updates. After convergence the bias is moved to an
// exact minimizer of the primal for the learned w, which only matters when
// no multiplier is free.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "storyscope/labels.hpp"

namespace storyscope {

struct SvmParams {
    double C = 1.0;
    double tolerance = 1e-3;
    std::size_t max_epochs = 0;  // 0: 10 * |train|

    void validate() const {
        if (!(C > 0.0)) throw std::invalid_argument("svm: C must be > 0");
        if (!(tolerance > 0.0)) throw std::invalid_argument("svm: tolerance must be > 0");
    }
};

struct SvmTrainingInfo {
    std::size_t iterations = 0;  // pair updates
    std::size_t epochs = 0;      // completed blocks of |train| updates
    bool hit_iteration_cap = false;
    double final_violation = 0.0;
    // Dual objective 1/2 a'Qa - e'a at the start and after every epoch and at the end.
    std::vector<double> dual_objective;
};

class SvmModel {
public:
    SvmModel(BinaryLabels labels, std::vector<double> weights, double bias, SvmParams params)
        : labels_(std::move(labels)), weights_(std::move(weights)), bias_(bias), params_(params) {}

    const BinaryLabels& labels() const { return labels_; }
    const std::vector<double>& weights() const { return weights_; }
    double bias() const { return bias_; }
    const SvmParams& params() const { return params_; }
    std::size_t vocab_size() const { return weights_.size(); }
    const SvmTrainingInfo& info() const { return info_; }
    void set_info(SvmTrainingInfo info) { info_ = std::move(info); }

    // Signed distance proxy; positive side is the positive label.
    double decision(const FeatureVector& v) const {
        check_indices(v, weights_.size());
        double s = bias_;
        for (auto f : v.active) s += weights_[f];
        return s;
    }

    Prediction predict(const FeatureVector& v) const {
        const double d = decision(v);
        std::array<double, 2> cls{};
        cls[labels_.positive] = d;
        cls[1 - labels_.positive] = -d;
        auto p = decide(labels_, cls);
        p.score = d;
        return p;
    }

private:
    BinaryLabels labels_;
    std::vector<double> weights_;
    double bias_;
    SvmParams params_;
    SvmTrainingInfo info_;
};

inline double svm_primal_objective(const std::vector<double>& w, double b, double C,
                                   const std::vector<FeatureVector>& xs, const std::vector<int>& ys) {
    double reg = 0.0;
    for (double x : w) reg += x * x;
    double loss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double s = b;
        for (auto f : xs[i].active) s += w[f];
        loss += std::max(0.0, 1.0 - ys[i] * s);
    }
    return 0.5 * reg + C * loss;
}

inline double svm_primal_objective(const SvmModel& m, const std::vector<LabeledVector>& data) {
    std::vector<FeatureVector> xs;
    std::vector<int> ys;
    for (const auto& e : data) {
        xs.push_back(e.x);
        ys.push_back(e.label == m.labels().positive_label() ? 1 : -1);
    }
    return svm_primal_objective(m.weights(), m.bias(), m.params().C, xs, ys);
}

namespace detail {

inline std::size_t intersection_size(const std::vector<FeatureIndex>& a, const std::vector<FeatureIndex>& b) {
    std::size_t n = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++n; ++i; ++j; }
    }
    return n;
}

// Minimizes sum_i max(0, 1 - y_i (s_i + b)) over b. The function is convex
// and piecewise linear with kinks at b_i = y_i - s_i; among minimizers the
// one closest to `hint` is returned.
inline double best_bias(const std::vector<double>& s, const std::vector<int>& y, double hint) {
    const std::size_t n = s.size();
    std::vector<double> knots(n);
    for (std::size_t i = 0; i < n; ++i) knots[i] = y[i] - s[i];
    auto hinge = [&](double b) {
        double h = 0.0;
        for (std::size_t i = 0; i < n; ++i) h += std::max(0.0, 1.0 - y[i] * (s[i] + b));
        return h;
    };
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto c) { return knots[a] < knots[c]; });
    // Left of every knot the slope is -(#positives); each knot adds 1.
    double slope = 0.0;
    for (int yi : y) slope -= (yi > 0 ? 1.0 : 0.0);
    std::size_t k = 0;
    while (k < n && slope < 0.0) {
        slope += 1.0;
        ++k;
    }
    if (k == 0) {
        // No positive examples: hinge is non-decreasing everywhere.
        return std::min(hint, n ? knots[order[0]] : hint);
    }
    double lo = knots[order[k - 1]];
    double hi = lo;
    if (slope == 0.0) hi = k < n ? knots[order[k]] : std::numeric_limits<double>::infinity();
    double b = std::clamp(hint, lo, hi);
    // Guard against rounding in the slope bookkeeping.
    if (hinge(b) > hinge(lo) + 1e-12) b = lo;
    return b;
}

}  // namespace detail

inline SvmModel train_svm(const std::vector<LabeledVector>& train, std::size_t vocab_size,
                          const SvmParams& params = {}, const std::string& positive_label = {}) {
    params.validate();
    auto labels = BinaryLabels::from_examples(train, positive_label);
    const std::size_t n = train.size();
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        check_indices(train[i].x, vocab_size);
        y[i] = train[i].label == labels.positive_label() ? 1 : -1;
    }
    const double C = params.C;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // Q a - e
    std::vector<double> kdiag(n);
    for (std::size_t i = 0; i < n; ++i) kdiag[i] = static_cast<double>(train[i].x.active.size());

    auto kernel_column = [&](std::size_t i, std::vector<double>& col) {
        for (std::size_t t = 0; t < n; ++t)
            col[t] = static_cast<double>(detail::intersection_size(train[i].x.active, train[t].x.active));
    };
    auto dual_objective = [&]() {
        // 1/2 a'Qa - e'a = 1/2 a'(G + e) - e'a = 1/2 a'(G - e)
        double v = 0.0;
        for (std::size_t t = 0; t < n; ++t) v += alpha[t] * (grad[t] - 1.0);
        return 0.5 * v;
    };

    SvmTrainingInfo info;
    info.dual_objective.push_back(dual_objective());
    const std::size_t epochs = params.max_epochs ? params.max_epochs : 10 * n;
    const std::size_t cap = epochs * n;
    std::vector<double> ki(n), kj(n);
    constexpr double kTau = 1e-12;

    while (true) {
        // Working set: i maximizes -y G over I_up, j minimizes it over I_low.
        double gmax = -std::numeric_limits<double>::infinity();
        double gmin = std::numeric_limits<double>::infinity();
        std::size_t i = n, j = n;
        for (std::size_t t = 0; t < n; ++t) {
            const double v = -y[t] * grad[t];
            const bool up = (y[t] > 0 && alpha[t] < C) || (y[t] < 0 && alpha[t] > 0);
            const bool low = (y[t] < 0 && alpha[t] < C) || (y[t] > 0 && alpha[t] > 0);
            if (up && v > gmax) { gmax = v; i = t; }
            if (low && v < gmin) { gmin = v; j = t; }
        }
        info.final_violation = gmax - gmin;
        if (i == n || j == n || gmax - gmin <= params.tolerance) break;
        if (info.iterations >= cap) {
            info.hit_iteration_cap = true;
            break;
        }
        kernel_column(i, ki);
        kernel_column(j, kj);
        const double quad = std::max(kdiag[i] + kdiag[j] - 2.0 * ki[j], kTau);
        const double old_i = alpha[i];
        const double old_j = alpha[j];
        if (y[i] != y[j]) {
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0) {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = diff; }
            } else {
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = -diff; }
            }
            if (diff > 0) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = C - diff; }
            } else {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = C + diff; }
            }
        } else {
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > C) {
                if (alpha[i] > C) { alpha[i] = C; alpha[j] = sum - C; }
            } else {
                if (alpha[j] < 0) { alpha[j] = 0; alpha[i] = sum; }
            }
            if (sum > C) {
                if (alpha[j] > C) { alpha[j] = C; alpha[i] = sum - C; }
            } else {
                if (alpha[i] < 0) { alpha[i] = 0; alpha[j] = sum; }
            }
        }
        const double di = alpha[i] - old_i;
        const double dj = alpha[j] - old_j;
        for (std::size_t t = 0; t < n; ++t)
            grad[t] += y[t] * (y[i] * ki[t] * di + y[j] * kj[t] * dj);
        ++info.iterations;
        if (info.iterations % n == 0) {
            ++info.epochs;
            info.dual_objective.push_back(dual_objective());
        }
    }
    info.dual_objective.push_back(dual_objective());

    std::vector<double> w(vocab_size, 0.0);
    for (std::size_t t = 0; t < n; ++t)
        if (alpha[t] != 0.0)
            for (auto f : train[t].x.active) w[f] += y[t] * alpha[t];

    // libsvm's bias estimate: average over free multipliers, else the midpoint
    // of the feasible interval.
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t nr_free = 0;
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        const bool at_upper = alpha[t] >= C;
        const bool at_lower = alpha[t] <= 0.0;
        if (at_upper) {
            if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else if (at_lower) {
            if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
        } else {
            ++nr_free;
            sum_free += yg;
        }
    }
    double rho = 0.0;
    if (nr_free > 0) rho = sum_free / static_cast<double>(nr_free);
    else if (std::isfinite(ub) && std::isfinite(lb)) rho = (ub + lb) / 2.0;
    else if (std::isfinite(ub)) rho = ub;
    else if (std::isfinite(lb)) rho = lb;

    std::vector<double> s(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = 0.0;
        for (auto f : train[t].x.active) v += w[f];
        s[t] = v;
    }
    const double bias = detail::best_bias(s, y, -rho);

    SvmModel model(labels, std::move(w), bias, params);
    model.set_info(std::move(info));
    return model;
}

}  // namespace storyscope
