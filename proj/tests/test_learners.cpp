#include <doctest.h>

#include <cmath>

#include "phishdef/learners.hpp"
#include "phishdef/rng.hpp"

using namespace phishdef;

namespace {

FeatureVector sparse(std::initializer_list<std::pair<uint32_t, double>> entries) {
    FeatureVector v;
    v.entries.assign(entries.begin(), entries.end());
    return v;
}

} // namespace

TEST_CASE("predict takes the sign of the inner product") {
    LinearModel model;
    model.w = {1.0, -2.0};
    auto pred = predict(model, sparse({{0, 1.0}, {1, 1.0}}));
    CHECK(pred.margin == -1.0);
    CHECK(pred.label == Label::benign);

    LinearModel zero;
    auto tie = predict(zero, sparse({{4, 0.3}}));
    CHECK(tie.margin == 0.0);
    CHECK(tie.label == Label::malicious); // sign(0) breaks toward +1
}

TEST_CASE("predict is invariant under positive weight scaling") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        LinearModel model, scaled;
        for (int i = 0; i < 8; ++i) model.w.push_back(rng.uniform01() * 2 - 1);
        double factor = rng.uniform01() * 9 + 0.1;
        for (double w : model.w) scaled.w.push_back(w * factor);
        FeatureVector x;
        for (uint32_t i = 0; i < 8; ++i) {
            if (rng.uniform01() < 0.5) x.entries.emplace_back(i, rng.uniform01());
        }
        CHECK(predict(model, x).label == predict(scaled, x).label);
    }
}

TEST_CASE("perceptron updates only on sign disagreement") {
    LinearModel model;
    // zero margin predicts +1, so a positive example is already "correct"
    CHECK(!perceptron_update(model, {sparse({{0, 1.0}}), Label::malicious}));
    CHECK(model.w.empty());

    CHECK(perceptron_update(model, {sparse({{0, 1.0}}), Label::benign}));
    REQUIRE(model.w.size() == 1);
    CHECK(model.w[0] == -1.0);

    CHECK(!perceptron_update(model, {sparse({{0, 1.0}}), Label::benign}));
    CHECK(model.w[0] == -1.0);
}

TEST_CASE("perceptron obeys the (R/gamma)^2 mistake bound on separable data") {
    Rng rng(17);
    for (int dataset = 0; dataset < 10; ++dataset) {
        // unit separator, points in a ball of radius R with margin gamma
        const int dim = 2 + static_cast<int>(rng.below(4));
        std::vector<double> w_star(dim);
        double norm = 0;
        for (double& v : w_star) {
            v = rng.uniform01() * 2 - 1;
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (double& v : w_star) v /= norm;

        const double R = 2.0;
        const double gamma = 0.2;
        std::vector<Example> data;
        while (data.size() < 300) {
            FeatureVector x;
            double margin = 0, radius = 0;
            for (uint32_t i = 0; i < static_cast<uint32_t>(dim); ++i) {
                double v = (rng.uniform01() * 2 - 1) * R / std::sqrt(static_cast<double>(dim));
                x.entries.emplace_back(i, v);
                margin += w_star[i] * v;
                radius += v * v;
            }
            if (std::abs(margin) < gamma || radius > R * R) continue;
            data.push_back({x, margin > 0 ? Label::malicious : Label::benign});
        }

        LinearModel model;
        size_t mistakes = 0;
        const double bound = (R / gamma) * (R / gamma);
        for (int pass = 0; pass < 200; ++pass) {
            size_t before = mistakes;
            for (const auto& ex : data) {
                if (perceptron_update(model, ex)) ++mistakes;
            }
            if (mistakes == before) break; // converged
        }
        CHECK(mistakes <= static_cast<size_t>(bound));
    }
}

TEST_CASE("normal_quantile inverts the normal CDF") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(normal_quantile(0.8413447460685429) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(normal_quantile(0.9772498680518208) == doctest::Approx(2.0).epsilon(1e-9));
    for (double p : {0.55, 0.66, 0.73, 0.9, 0.99}) {
        double x = normal_quantile(p);
        CHECK(0.5 * std::erfc(-x / std::sqrt(2.0)) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("CW leaves a satisfied constraint alone") {
    GaussianModel model;
    model.mu = {3.0};
    model.sigma = {0.5};
    GaussianModel before = model;
    // margin 3 >= phi*sqrt(0.5) for eta=0.73
    cw_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.73);
    CHECK(model.mu == before.mu);
    CHECK(model.sigma == before.sigma);
}

TEST_CASE("CW satisfies the probability constraint after its update") {
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        GaussianModel model;
        model.mu = {rng.uniform01() * 2 - 1};
        model.sigma = {rng.uniform01() * 2 + 0.1};
        double eta = 0.55 + rng.uniform01() * 0.4;
        FeatureVector x = sparse({{0, rng.uniform01() + 0.2}});
        Label y = rng.uniform01() < 0.5 ? Label::malicious : Label::benign;

        cw_update(model, {x, y}, eta);
        double margin = label_sign(y) * model.margin(x);
        double sd = std::sqrt(model.variance(x));
        CHECK(margin >= normal_quantile(eta) * sd - 1e-9);
    }
}

TEST_CASE("CW rejects an out-of-range eta") {
    GaussianModel model;
    CHECK_THROWS_AS(cw_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.5), InvalidEta);
    CHECK_THROWS_AS(cw_update(model, {sparse({{0, 1.0}}), Label::malicious}, 1.0), InvalidEta);
    CHECK_THROWS_AS(CwLearner(0.4), InvalidEta);
}

TEST_CASE("AROW hand case: unit example from the zero model") {
    GaussianModel model;
    arow_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.5, 0.5);
    REQUIRE(model.mu.size() == 1);
    CHECK(model.mu[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(model.sigma[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("AROW is a no-op at margin >= 1") {
    GaussianModel model;
    model.mu = {2.0};
    model.sigma = {0.7};
    GaussianModel before = model;
    arow_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.5, 0.5);
    CHECK(model.mu == before.mu);
    CHECK(model.sigma == before.sigma);
}

TEST_CASE("AROW rejects non-positive lambdas") {
    GaussianModel model;
    CHECK_THROWS_AS(arow_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.0, 0.5),
                    InvalidLambda);
    CHECK_THROWS_AS(arow_update(model, {sparse({{0, 1.0}}), Label::malicious}, 0.5, -1.0),
                    InvalidLambda);
    CHECK_THROWS_AS(ArowLearner(-0.5, 0.5), InvalidLambda);
}

TEST_CASE("CW and AROW variances stay positive and never grow") {
    Rng rng(29);
    GaussianModel cw_model, arow_model;
    std::vector<double> prev_cw, prev_arow;
    for (int step = 0; step < 500; ++step) {
        FeatureVector x;
        for (uint32_t i = 0; i < 6; ++i) {
            if (rng.uniform01() < 0.4) x.entries.emplace_back(i, rng.uniform01() + 0.05);
        }
        if (x.entries.empty()) continue;
        Label y = rng.uniform01() < 0.5 ? Label::malicious : Label::benign;
        cw_update(cw_model, {x, y}, 0.73);
        arow_update(arow_model, {x, y}, 0.5, 0.5);

        for (size_t i = 0; i < cw_model.sigma.size(); ++i) {
            CHECK(cw_model.sigma[i] > 0.0);
            if (i < prev_cw.size()) CHECK(cw_model.sigma[i] <= prev_cw[i] + 1e-15);
        }
        for (size_t i = 0; i < arow_model.sigma.size(); ++i) {
            CHECK(arow_model.sigma[i] > 0.0);
            if (i < prev_arow.size()) CHECK(arow_model.sigma[i] <= prev_arow[i] + 1e-15);
        }
        prev_cw = cw_model.sigma;
        prev_arow = arow_model.sigma;
    }
}

TEST_CASE("SVM solves the two-point maximum-margin system") {
    std::vector<Example> batch = {{sparse({{0, 1.0}}), Label::malicious},
                                  {sparse({{0, -1.0}}), Label::benign}};
    auto solution = svm_train_full(batch, 32.0);
    REQUIRE(solution.model.w.size() == 1);
    CHECK(solution.model.w[0] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("SVM classifies a separable random batch perfectly") {
    Rng rng(31);
    std::vector<Example> batch;
    for (int i = 0; i < 50; ++i) {
        double offset = rng.uniform01() * 0.8;
        bool positive = rng.uniform01() < 0.5;
        FeatureVector x = sparse({{0, positive ? 1.0 + offset : -1.0 - offset},
                                  {1, rng.uniform01() * 0.2}});
        batch.push_back({x, positive ? Label::malicious : Label::benign});
    }
    LinearModel model = svm_train(batch, 8.0);
    for (const auto& ex : batch) CHECK(predict(model, ex.x).label == ex.y);
}

TEST_CASE("SVM throws on an empty batch") {
    CHECK_THROWS_AS(svm_train({}, 1.0), EmptyBatch);
}

TEST_CASE("SVM single-class batch gets the right sign everywhere") {
    std::vector<Example> batch;
    Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        batch.push_back({sparse({{0, rng.uniform01() + 0.5}}), Label::malicious});
    }
    LinearModel model = svm_train(batch, 4.0);
    for (const auto& ex : batch) CHECK(predict(model, ex.x).label == Label::malicious);
}

TEST_CASE("SVM variant policies") {
    auto batch_of = [](double value, Label y) {
        std::vector<Example> b;
        for (int i = 0; i < 4; ++i) {
            b.push_back({sparse({{0, value}}), y});
            b.push_back({sparse({{0, -value}}), y == Label::malicious ? Label::benign
                                                                      : Label::malicious});
        }
        return b;
    };

    SUBCASE("once never retrains") {
        SvmVariantState once(SvmVariant::once, 8.0);
        once.init({batch_of(1.0, Label::malicious)});
        LinearModel initial = once.model();
        for (int i = 0; i < 5; ++i) once.step(batch_of(1.0, Label::benign)); // flipped concept
        CHECK(once.model().w == initial.w);
    }
    SUBCASE("single depends only on the latest batch") {
        SvmVariantState single(SvmVariant::single, 8.0);
        single.init({batch_of(1.0, Label::malicious)});
        single.step(batch_of(1.0, Label::benign));
        // retrained on the flipped batch: sign of w[0] must flip
        CHECK(single.model().w[0] < 0);
        CHECK(single.window_batches() == 1);
    }
    SUBCASE("multi keeps a sliding window of 10") {
        SvmVariantState multi(SvmVariant::multi, 8.0, 10);
        std::vector<std::vector<Example>> init;
        for (int i = 0; i < 10; ++i) init.push_back(batch_of(1.0, Label::malicious));
        multi.init(init);
        for (int b = 0; b < 2; ++b) multi.step(batch_of(1.0, Label::malicious));
        CHECK(multi.window_batches() == 10); // batches 3..12 of the 12 seen
    }
    SUBCASE("multi_once trains on all init batches and freezes") {
        SvmVariantState frozen(SvmVariant::multi_once, 8.0, 10);
        std::vector<std::vector<Example>> init;
        for (int i = 0; i < 10; ++i) init.push_back(batch_of(1.0, Label::malicious));
        frozen.init(init);
        LinearModel initial = frozen.model();
        frozen.step(batch_of(1.0, Label::benign));
        CHECK(frozen.model().w == initial.w);
    }
}

TEST_CASE("models grow on demand with neutral defaults") {
    GaussianModel g;
    g.ensure_dim(3);
    CHECK(g.mu == std::vector<double>{0, 0, 0});
    CHECK(g.sigma == std::vector<double>{1, 1, 1});

    // an index past the current dimension contributes sigma=1 to the variance
    GaussianModel small;
    small.mu = {0.5};
    small.sigma = {0.25};
    CHECK(small.variance(sparse({{0, 1.0}, {5, 2.0}})) == doctest::Approx(0.25 + 4.0));
}
