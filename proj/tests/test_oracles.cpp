#include <doctest.h>

#include "oracle_support.hpp"
#include "phishdef/rng.hpp"

using namespace phishdef;
using oracle::GaussianState;
using oracle::Mat;
using oracle::Vec;

namespace {

// Well-conditioned random instance of dimension d: positive-definite Sigma,
// bounded mu and x.
GaussianState random_state(Rng& rng, size_t d) {
    GaussianState s;
    s.mu.resize(d);
    for (double& v : s.mu) v = rng.uniform01() * 2 - 1;
    Mat A(d, Vec(d, 0.0));
    for (auto& row : A)
        for (double& v : row) v = (rng.uniform01() * 2 - 1) * 0.5;
    s.sigma = oracle::identity(d);
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            double dot = 0;
            for (size_t k = 0; k < d; ++k) dot += A[i][k] * A[j][k];
            s.sigma[i][j] = dot + (i == j ? 0.4 + rng.uniform01() : 0.0);
        }
    }
    return s;
}

Vec random_x(Rng& rng, size_t d) {
    Vec x(d);
    double norm = 0;
    for (double& v : x) {
        v = rng.uniform01() * 2 - 1;
        norm += v * v;
    }
    if (norm < 0.05) x[0] += 1.0;
    return x;
}

double max_abs_diff(const GaussianState& a, const GaussianState& b) {
    double m = 0;
    for (size_t i = 0; i < a.mu.size(); ++i) m = std::max(m, std::abs(a.mu[i] - b.mu[i]));
    for (size_t i = 0; i < a.mu.size(); ++i)
        for (size_t j = 0; j < a.mu.size(); ++j)
            m = std::max(m, std::abs(a.sigma[i][j] - b.sigma[i][j]));
    return m;
}

} // namespace

TEST_CASE("CW closed form equals constrained KL minimization (full covariance)") {
    Rng rng(101);
    int tested = 0;
    while (tested < 100) {
        size_t d = 1 + rng.below(3);
        GaussianState s = random_state(rng, d);
        Vec x = random_x(rng, d);
        int y = rng.uniform01() < 0.5 ? 1 : -1;
        double eta = 0.55 + rng.uniform01() * 0.40;
        double phi = normal_quantile(eta);

        double margin = y * oracle::dot(s.mu, x);
        double variance = oracle::dot(x, oracle::mat_vec(s.sigma, x));
        if (margin >= phi * std::sqrt(variance)) continue; // constraint satisfied: no-op case

        GaussianState closed = oracle::cw_update_full(s, x, y, eta);
        GaussianState numeric = oracle::cw_minimize_numeric(s, x, y, eta);
        CAPTURE(d);
        CAPTURE(eta);
        CHECK(max_abs_diff(closed, numeric) < 1e-6);
        ++tested;
    }
}

TEST_CASE("CW no-op when the constraint already holds matches the minimizer trivially") {
    Rng rng(103);
    for (int tested = 0; tested < 50;) {
        size_t d = 1 + rng.below(3);
        GaussianState s = random_state(rng, d);
        Vec x = random_x(rng, d);
        int y = rng.uniform01() < 0.5 ? 1 : -1;
        double eta = 0.55 + rng.uniform01() * 0.40;
        double phi = normal_quantile(eta);
        double margin = y * oracle::dot(s.mu, x);
        double variance = oracle::dot(x, oracle::mat_vec(s.sigma, x));
        if (margin < phi * std::sqrt(variance)) continue;
        // feasible starting point: KL minimum is the old distribution itself
        GaussianState closed = oracle::cw_update_full(s, x, y, eta);
        CHECK(max_abs_diff(closed, s) == 0.0);
        ++tested;
    }
}

TEST_CASE("AROW closed form equals the unconstrained objective minimizer") {
    Rng rng(107);
    int tested = 0;
    while (tested < 100) {
        size_t d = 1 + rng.below(3);
        GaussianState s = random_state(rng, d);
        Vec x = random_x(rng, d);
        int y = rng.uniform01() < 0.5 ? 1 : -1;
        double lambda1 = 0.2 + rng.uniform01() * 5.0;
        double lambda2 = 0.2 + rng.uniform01() * 5.0;

        if (y * oracle::dot(s.mu, x) >= 1.0) continue; // hinge inactive: update gated off

        GaussianState closed = oracle::arow_update_full(s, x, y, lambda1, lambda2);
        GaussianState numeric = oracle::arow_minimize_numeric(s, x, y, lambda1, lambda2);
        CAPTURE(d);
        CHECK(max_abs_diff(closed, numeric) < 1e-6);
        ++tested;
    }
}

TEST_CASE("AROW 1-D hand case matches the numerical minimizer exactly") {
    GaussianState s{{0.0}, {{1.0}}};
    GaussianState closed = oracle::arow_update_full(s, {1.0}, 1, 0.5, 0.5);
    CHECK(closed.mu[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(closed.sigma[0][0] == doctest::Approx(0.5).epsilon(1e-15));
    GaussianState numeric = oracle::arow_minimize_numeric(s, {1.0}, 1, 0.5, 0.5);
    CHECK(max_abs_diff(closed, numeric) < 1e-9);
}

TEST_CASE("AROW zero-hinge mean matches the minimizer's mean") {
    // with margin >= 1 the objective's mu-part is minimized at the old mean
    GaussianState s{{2.0, 0.0}, {{1.0, 0.1}, {0.1, 0.8}}};
    GaussianState numeric = oracle::arow_minimize_numeric(s, {1.0, 0.0}, 1, 0.7, 0.7);
    CHECK(std::abs(numeric.mu[0] - 2.0) < 1e-8);
    CHECK(std::abs(numeric.mu[1] - 0.0) < 1e-8);
}

TEST_CASE("diagonal production update equals the full form on 1-sparse inputs") {
    Rng rng(109);
    for (int trial = 0; trial < 50; ++trial) {
        double mu0 = rng.uniform01() * 2 - 1;
        double sigma0 = 0.2 + rng.uniform01() * 2;
        double xv = rng.uniform01() + 0.1;
        int y = rng.uniform01() < 0.5 ? 1 : -1;

        GaussianModel model;
        model.mu = {mu0};
        model.sigma = {sigma0};
        FeatureVector x;
        x.entries = {{0, xv}};

        GaussianState full{{mu0}, {{sigma0}}};

        GaussianModel cw_diag = model;
        cw_update(cw_diag, {x, y > 0 ? Label::malicious : Label::benign}, 0.73);
        GaussianState cw_full = oracle::cw_update_full(full, {xv}, y, 0.73);
        CHECK(cw_diag.mu[0] == doctest::Approx(cw_full.mu[0]).epsilon(1e-12));
        CHECK(cw_diag.sigma[0] == doctest::Approx(cw_full.sigma[0][0]).epsilon(1e-12));

        GaussianModel arow_diag = model;
        arow_update(arow_diag, {x, y > 0 ? Label::malicious : Label::benign}, 2.0, 2.0);
        GaussianState arow_full = oracle::arow_update_full(full, {xv}, y, 2.0, 2.0);
        CHECK(arow_diag.mu[0] == doctest::Approx(arow_full.mu[0]).epsilon(1e-12));
        CHECK(arow_diag.sigma[0] == doctest::Approx(arow_full.sigma[0][0]).epsilon(1e-12));
    }
}

TEST_CASE("SVM dual coordinate descent reaches the QP oracle objective") {
    Rng rng(113);
    for (int instance = 0; instance < 20; ++instance) {
        std::vector<Example> batch;
        size_t dim = 3 + rng.below(6);
        for (int i = 0; i < 50; ++i) {
            FeatureVector x;
            for (uint32_t j = 0; j < dim; ++j) {
                if (rng.uniform01() < 0.6) x.entries.emplace_back(j, rng.uniform01());
            }
            Label y = rng.uniform01() < 0.5 ? Label::malicious : Label::benign;
            batch.push_back({x, y});
        }
        double C = std::pow(2.0, static_cast<double>(rng.below(7)));

        auto solution = svm_train_full(batch, C, 7);
        auto reference = oracle::svm_qp_oracle(batch, C);

        double gap = std::abs(solution.dual_objective - reference.objective) /
                     std::max(1.0, std::abs(reference.objective));
        CAPTURE(instance);
        CAPTURE(C);
        CHECK(gap <= 1e-4);
    }
}
