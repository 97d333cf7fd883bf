#include "phishdef/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phishdef/errors.hpp"
#include "phishdef/rng.hpp"

namespace phishdef {

void LinearModel::ensure_dim(uint32_t dim) {
    if (w.size() < dim) w.resize(dim, 0.0);
}

double LinearModel::margin(const FeatureVector& x) const {
    double m = 0;
    for (const auto& [i, v] : x.entries) {
        if (i < w.size()) m += w[i] * v;
    }
    return m;
}

void GaussianModel::ensure_dim(uint32_t dim) {
    if (mu.size() < dim) {
        mu.resize(dim, 0.0);
        sigma.resize(dim, 1.0);
    }
}

double GaussianModel::margin(const FeatureVector& x) const {
    double m = 0;
    for (const auto& [i, v] : x.entries) {
        if (i < mu.size()) m += mu[i] * v;
    }
    return m;
}

double GaussianModel::variance(const FeatureVector& x) const {
    double var = 0;
    for (const auto& [i, v] : x.entries) {
        var += (i < sigma.size() ? sigma[i] : 1.0) * v * v;
    }
    return var;
}

Prediction predict(const LinearModel& model, const FeatureVector& x) {
    double m = model.margin(x);
    return {label_from_margin(m), m};
}

Prediction predict(const GaussianModel& model, const FeatureVector& x) {
    double m = model.margin(x);
    return {label_from_margin(m), m};
}

bool perceptron_update(LinearModel& model, const Example& ex) {
    double m = model.margin(ex.x);
    if (label_from_margin(m) == ex.y) return false;
    if (!ex.x.entries.empty()) model.ensure_dim(ex.x.entries.back().first + 1);
    const double y = label_sign(ex.y);
    for (const auto& [i, v] : ex.x.entries) model.w[i] += y * v;
    return true;
}

double normal_quantile(double p) {
    // Phi(x) via erfc; bisection bracket then Newton polish.
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -10, hi = 10;
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        if (density <= 0) break;
        x -= (cdf(x) - p) / density;
    }
    return x;
}

namespace detail {

CwCoefficients cw_coefficients(double margin, double variance, double phi) {
    CwCoefficients c;
    if (variance <= 0) return c; // x is zero on its support: constraint holds trivially
    const double psi = 1.0 + phi * phi / 2.0;
    const double zeta = 1.0 + phi * phi;
    const double alpha =
        (-margin * psi + std::sqrt(margin * margin * phi * phi * phi * phi / 4.0 +
                                   variance * phi * phi * zeta)) /
        (variance * zeta);
    if (alpha <= 0) return c;
    c.alpha = alpha;
    c.sqrt_u = (-alpha * variance * phi +
                std::sqrt(alpha * alpha * variance * variance * phi * phi + 4.0 * variance)) /
               2.0;
    c.beta = alpha * phi / (c.sqrt_u + variance * alpha * phi);
    return c;
}

ArowCoefficients arow_coefficients(double margin, double variance, double r1, double r2) {
    ArowCoefficients c;
    const double hinge = 1.0 - margin;
    if (hinge <= 0) return c;
    c.alpha = hinge / (variance + r1);
    c.beta = 1.0 / (variance + r2);
    return c;
}

} // namespace detail

void cw_update(GaussianModel& model, const Example& ex, double eta) {
    if (eta <= 0.5 || eta >= 1.0) throw InvalidEta(eta);
    if (ex.x.entries.empty()) return;
    model.ensure_dim(ex.x.entries.back().first + 1);

    const double y = label_sign(ex.y);
    const double margin = y * model.margin(ex.x);
    const double variance = model.variance(ex.x);
    const double phi = normal_quantile(eta);

    auto c = detail::cw_coefficients(margin, variance, phi);
    if (c.alpha == 0) return;

    for (const auto& [i, v] : ex.x.entries) {
        const double sv = model.sigma[i] * v; // (Sigma x)_i
        model.mu[i] += c.alpha * y * sv;
        model.sigma[i] -= c.beta * sv * sv;
    }
}

void arow_update(GaussianModel& model, const Example& ex, double lambda1, double lambda2) {
    if (lambda1 <= 0) throw InvalidLambda(lambda1);
    if (lambda2 <= 0) throw InvalidLambda(lambda2);
    if (ex.x.entries.empty()) return;
    model.ensure_dim(ex.x.entries.back().first + 1);

    const double y = label_sign(ex.y);
    const double margin = y * model.margin(ex.x);
    const double variance = model.variance(ex.x);

    auto c = detail::arow_coefficients(margin, variance, 1.0 / (2.0 * lambda1),
                                       1.0 / (2.0 * lambda2));
    if (c.alpha == 0) return;

    for (const auto& [i, v] : ex.x.entries) {
        const double sv = model.sigma[i] * v;
        model.mu[i] += c.alpha * y * sv;
        model.sigma[i] -= c.beta * sv * sv;
    }
}

double svm_dual_objective(const std::vector<Example>& batch, const std::vector<double>& alpha) {
    // 0.5*||w||^2 - e^T alpha with w = sum_i alpha_i y_i x_i.
    uint32_t dim = 0;
    for (const auto& ex : batch) {
        if (!ex.x.entries.empty()) dim = std::max(dim, ex.x.entries.back().first + 1);
    }
    std::vector<double> w(dim, 0.0);
    double sum_alpha = 0;
    for (size_t i = 0; i < batch.size(); ++i) {
        const double ay = alpha[i] * label_sign(batch[i].y);
        for (const auto& [j, v] : batch[i].x.entries) w[j] += ay * v;
        sum_alpha += alpha[i];
    }
    double norm2 = 0;
    for (double v : w) norm2 += v * v;
    return 0.5 * norm2 - sum_alpha;
}

SvmSolution svm_train_full(const std::vector<Example>& batch, double C, uint64_t seed,
                           double tolerance, int max_epochs) {
    if (batch.empty()) throw EmptyBatch();

    const size_t n = batch.size();
    uint32_t dim = 0;
    std::vector<double> q_diag(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        for (const auto& [j, v] : batch[i].x.entries) {
            dim = std::max(dim, j + 1);
            q_diag[i] += v * v;
        }
    }

    std::vector<double> w(dim, 0.0);
    std::vector<double> alpha(n, 0.0);
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);

    int epoch = 0;
    for (; epoch < max_epochs; ++epoch) {
        rng.shuffle(order);
        double max_violation = 0;
        for (size_t i : order) {
            const double y = label_sign(batch[i].y);
            double wx = 0;
            for (const auto& [j, v] : batch[i].x.entries) wx += w[j] * v;
            const double grad = y * wx - 1.0;

            double projected = grad;
            if (alpha[i] <= 0 && grad > 0) projected = 0;
            if (alpha[i] >= C && grad < 0) projected = 0;
            max_violation = std::max(max_violation, std::abs(projected));
            if (projected == 0) continue;

            double next;
            if (q_diag[i] > 0) {
                next = std::clamp(alpha[i] - grad / q_diag[i], 0.0, C);
            } else {
                // zero row: the dual term is linear in alpha_i
                next = grad < 0 ? C : 0.0;
            }
            const double delta = next - alpha[i];
            if (delta != 0) {
                alpha[i] = next;
                for (const auto& [j, v] : batch[i].x.entries) w[j] += delta * y * v;
            }
        }
        if (max_violation < tolerance) {
            ++epoch;
            break;
        }
    }

    SvmSolution out;
    out.model.w = std::move(w);
    out.dual_objective = svm_dual_objective(batch, alpha);
    out.alpha = std::move(alpha);
    out.epochs = epoch;
    return out;
}

LinearModel svm_train(const std::vector<Example>& batch, double C, uint64_t seed) {
    return svm_train_full(batch, C, seed).model;
}

SvmVariantState::SvmVariantState(SvmVariant variant, double C, size_t window, uint64_t seed)
    : variant_(variant), C_(C), window_(window), seed_(seed) {
    if (variant_ == SvmVariant::once || variant_ == SvmVariant::single) window_ = 1;
}

void SvmVariantState::init(const std::vector<std::vector<Example>>& init_batches) {
    history_.clear();
    for (const auto& b : init_batches) {
        history_.push_back(b);
        while (history_.size() > window_) history_.pop_front();
    }
    retrain();
}

void SvmVariantState::step(const std::vector<Example>& new_batch) {
    history_.push_back(new_batch);
    while (history_.size() > window_) history_.pop_front();
    if (variant_ == SvmVariant::single || variant_ == SvmVariant::multi) retrain();
}

void SvmVariantState::retrain() {
    std::vector<Example> data;
    for (const auto& b : history_) data.insert(data.end(), b.begin(), b.end());
    model_ = svm_train(data, C_, seed_);
}

CwLearner::CwLearner(double eta) : eta_(eta) {
    if (eta <= 0.5 || eta >= 1.0) throw InvalidEta(eta);
}

ArowLearner::ArowLearner(double lambda1, double lambda2) : lambda1_(lambda1), lambda2_(lambda2) {
    if (lambda1 <= 0) throw InvalidLambda(lambda1);
    if (lambda2 <= 0) throw InvalidLambda(lambda2);
}

} // namespace phishdef
