#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fedcarbon/dataset.hpp"
#include "fedcarbon/rng.hpp"

// Classifier models for the training simulator: multinomial logistic
// regression and a one-hidden-layer tanh network, with hand-rolled
// cross-entropy gradients. Parameters live in a flat vector.

namespace fedcarbon {

enum class ModelKind { SoftmaxLinear, OneHiddenLayer };

struct ModelShape {
    ModelKind kind = ModelKind::SoftmaxLinear;
    int classes = 0;
    int dim = 0;
    int hidden = 0;   // OneHiddenLayer only

    // Layout: SoftmaxLinear stores classes rows of (dim weights, bias).
    // OneHiddenLayer stores hidden rows of (dim weights, bias) followed by
    // classes rows of (hidden weights, bias).
    std::int64_t param_count() const {
        if (classes < 2 || dim < 1) throw std::invalid_argument("ModelShape: classes >= 2 and dim >= 1 required");
        if (kind == ModelKind::SoftmaxLinear)
            return static_cast<std::int64_t>(classes) * (dim + 1);
        if (hidden < 1) throw std::invalid_argument("ModelShape: hidden must be >= 1");
        return static_cast<std::int64_t>(hidden) * (dim + 1) +
               static_cast<std::int64_t>(classes) * (hidden + 1);
    }
};

/// Zero weights for the linear model; small symmetric uniform weights for the
/// hidden-layer model (zeros would never break its symmetry).
inline std::vector<double> init_params(const ModelShape& shape, Rng& rng) {
    std::vector<double> w(static_cast<std::size_t>(shape.param_count()), 0.0);
    if (shape.kind == ModelKind::OneHiddenLayer) {
        const std::size_t first = static_cast<std::size_t>(shape.hidden) * (shape.dim + 1);
        const double r1 = 1.0 / std::sqrt(shape.dim + 1.0);
        const double r2 = 1.0 / std::sqrt(shape.hidden + 1.0);
        for (std::size_t i = 0; i < w.size(); ++i)
            w[i] = rng.uniform(-1.0, 1.0) * (i < first ? r1 : r2);
    }
    return w;
}

namespace detail {

/// Fills `logits` for one example and, for OneHiddenLayer, the activations
/// needed for the backward pass.
inline void forward(const ModelShape& shape, const std::vector<double>& w, const double* x,
                    std::vector<double>& logits, std::vector<double>& act) {
    if (shape.kind == ModelKind::SoftmaxLinear) {
        for (int c = 0; c < shape.classes; ++c) {
            const double* row = w.data() + static_cast<std::size_t>(c) * (shape.dim + 1);
            double z = row[shape.dim];
            for (int j = 0; j < shape.dim; ++j) z += row[j] * x[j];
            logits[static_cast<std::size_t>(c)] = z;
        }
        return;
    }
    const double* w2 = w.data() + static_cast<std::size_t>(shape.hidden) * (shape.dim + 1);
    for (int h = 0; h < shape.hidden; ++h) {
        const double* row = w.data() + static_cast<std::size_t>(h) * (shape.dim + 1);
        double z = row[shape.dim];
        for (int j = 0; j < shape.dim; ++j) z += row[j] * x[j];
        act[static_cast<std::size_t>(h)] = std::tanh(z);
    }
    for (int c = 0; c < shape.classes; ++c) {
        const double* row = w2 + static_cast<std::size_t>(c) * (shape.hidden + 1);
        double z = row[shape.hidden];
        for (int h = 0; h < shape.hidden; ++h) z += row[h] * act[static_cast<std::size_t>(h)];
        logits[static_cast<std::size_t>(c)] = z;
    }
}

/// Converts logits to softmax probabilities in place; returns log-sum-exp.
inline double softmax_inplace(std::vector<double>& logits) {
    double top = logits[0];
    for (double z : logits) top = std::max(top, z);
    double sum = 0.0;
    for (double& z : logits) {
        z = std::exp(z - top);
        sum += z;
    }
    for (double& z : logits) z /= sum;
    return top + std::log(sum);
}

}  // namespace detail

/// Mean cross-entropy of the model over the listed examples.
inline double mean_loss(const ModelShape& shape, const std::vector<double>& w, const Dataset& ds,
                        std::span<const int> idx) {
    if (idx.empty()) throw std::invalid_argument("mean_loss: empty example list");
    if (ds.classes != shape.classes || ds.dim != shape.dim)
        throw std::invalid_argument("mean_loss: dataset and model shapes disagree");
    std::vector<double> logits(static_cast<std::size_t>(shape.classes));
    std::vector<double> act(static_cast<std::size_t>(std::max(shape.hidden, 1)));
    double total = 0.0;
    for (int i : idx) {
        detail::forward(shape, w, ds.example(i), logits, act);
        const double lse = detail::softmax_inplace(logits);
        (void)lse;
        total -= std::log(logits[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)])]);
    }
    return total / static_cast<double>(idx.size());
}

/// Mean cross-entropy plus its gradient (accumulated into `grad`, which is
/// zeroed here).
inline double mean_loss_and_grad(const ModelShape& shape, const std::vector<double>& w,
                                 const Dataset& ds, std::span<const int> idx,
                                 std::vector<double>& grad) {
    if (idx.empty()) throw std::invalid_argument("mean_loss_and_grad: empty example list");
    if (ds.classes != shape.classes || ds.dim != shape.dim)
        throw std::invalid_argument("mean_loss_and_grad: dataset and model shapes disagree");
    grad.assign(w.size(), 0.0);
    std::vector<double> logits(static_cast<std::size_t>(shape.classes));
    std::vector<double> act(static_cast<std::size_t>(std::max(shape.hidden, 1)));
    const double inv_m = 1.0 / static_cast<double>(idx.size());
    double total = 0.0;
    for (int i : idx) {
        const double* x = ds.example(i);
        const int y = ds.labels[static_cast<std::size_t>(i)];
        detail::forward(shape, w, x, logits, act);
        detail::softmax_inplace(logits);
        total -= std::log(logits[static_cast<std::size_t>(y)]);
        if (shape.kind == ModelKind::SoftmaxLinear) {
            for (int c = 0; c < shape.classes; ++c) {
                const double coef = (logits[static_cast<std::size_t>(c)] - (c == y ? 1.0 : 0.0)) * inv_m;
                double* row = grad.data() + static_cast<std::size_t>(c) * (shape.dim + 1);
                for (int j = 0; j < shape.dim; ++j) row[j] += coef * x[j];
                row[shape.dim] += coef;
            }
        } else {
            const std::size_t w2_off = static_cast<std::size_t>(shape.hidden) * (shape.dim + 1);
            std::vector<double> dact(static_cast<std::size_t>(shape.hidden), 0.0);
            for (int c = 0; c < shape.classes; ++c) {
                const double coef = (logits[static_cast<std::size_t>(c)] - (c == y ? 1.0 : 0.0)) * inv_m;
                const double* w2row = w.data() + w2_off + static_cast<std::size_t>(c) * (shape.hidden + 1);
                double* grow = grad.data() + w2_off + static_cast<std::size_t>(c) * (shape.hidden + 1);
                for (int h = 0; h < shape.hidden; ++h) {
                    grow[h] += coef * act[static_cast<std::size_t>(h)];
                    dact[static_cast<std::size_t>(h)] += coef * w2row[h];
                }
                grow[shape.hidden] += coef;
            }
            for (int h = 0; h < shape.hidden; ++h) {
                const double a = act[static_cast<std::size_t>(h)];
                const double dz = dact[static_cast<std::size_t>(h)] * (1.0 - a * a);
                double* row = grad.data() + static_cast<std::size_t>(h) * (shape.dim + 1);
                for (int j = 0; j < shape.dim; ++j) row[j] += dz * x[j];
                row[shape.dim] += dz;
            }
        }
    }
    return total * inv_m;
}

/// Local objective: mean cross-entropy plus a proximal pull
/// prox_weight * ||w - anchor||^2 toward the anchor parameters.
inline double objective_and_grad(const ModelShape& shape, const std::vector<double>& w,
                                 const std::vector<double>& anchor, double prox_weight,
                                 const Dataset& ds, std::span<const int> idx,
                                 std::vector<double>& grad) {
    if (prox_weight < 0.0) throw std::domain_error("objective_and_grad: prox_weight must be >= 0");
    if (anchor.size() != w.size())
        throw std::invalid_argument("objective_and_grad: anchor size mismatch");
    double loss = mean_loss_and_grad(shape, w, ds, idx, grad);
    if (prox_weight > 0.0) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double diff = w[i] - anchor[i];
            loss += prox_weight * diff * diff;
            grad[i] += 2.0 * prox_weight * diff;
        }
    }
    return loss;
}

}
