#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <vector>

#include "phishdef/features.hpp"

namespace phishdef {

enum class Label : int { benign = -1, malicious = +1 };

inline int label_sign(Label y) { return static_cast<int>(y); }

// Tie-break: a zero margin classifies as malicious.
inline Label label_from_margin(double margin) {
    return margin >= 0 ? Label::malicious : Label::benign;
}

struct Example {
    FeatureVector x;
    Label y = Label::benign;
};

struct Prediction {
    Label label = Label::malicious;
    double margin = 0;
};

// Plain weight vector. Indices beyond the current dimension act as zero
// weights; the vector grows on demand.
struct LinearModel {
    std::vector<double> w;

    void ensure_dim(uint32_t dim);
    double margin(const FeatureVector& x) const;
};

// Gaussian weight distribution with diagonal covariance: mean mu plus one
// variance per feature. New dimensions start at mu=0, sigma=1; sigma stays
// positive and never grows under updates.
struct GaussianModel {
    std::vector<double> mu;
    std::vector<double> sigma;

    void ensure_dim(uint32_t dim);
    double margin(const FeatureVector& x) const;        // mu . x
    double variance(const FeatureVector& x) const;      // x^T Sigma x
};

Prediction predict(const LinearModel& model, const FeatureVector& x);
Prediction predict(const GaussianModel& model, const FeatureVector& x);

// Mistake-driven update: w += y*x on sign disagreement. Returns the mistake
// flag.
bool perceptron_update(LinearModel& model, const Example& ex);

// Inverse standard-normal CDF.
double normal_quantile(double p);

namespace detail {

// Shared scalar solution of the confidence-weighted projection, solved at
// margin M = y*(mu.x), variance V = x^T Sigma x, phi = quantile(eta).
// alpha == 0 means the probability constraint already holds.
struct CwCoefficients {
    double alpha = 0;  // mean step along y*Sigma*x
    double beta = 0;   // covariance shrink factor
    double sqrt_u = 0; // post-update standard deviation sqrt(x^T Sigma' x)
};
CwCoefficients cw_coefficients(double margin, double variance, double phi);

// AROW step sizes; alpha scales the mean update, beta the covariance shrink.
// r1 = 1/(2*lambda1), r2 = 1/(2*lambda2).
struct ArowCoefficients {
    double alpha = 0;
    double beta = 0;
};
ArowCoefficients arow_coefficients(double margin, double variance, double r1, double r2);

} // namespace detail

// Confidence-weighted update: KL projection onto the set of distributions
// that label (x, y) correctly with probability at least eta. A no-op when
// the constraint already holds. Throws InvalidEta unless eta is in (0.5, 1).
void cw_update(GaussianModel& model, const Example& ex, double eta);

// AROW update: minimizes KL to the old distribution plus lambda1 times the
// squared-hinge loss of mu plus lambda2 times x^T Sigma x. Mean and
// covariance move together, and only when the hinge loss is positive.
// Throws InvalidLambda for non-positive lambdas.
void arow_update(GaussianModel& model, const Example& ex, double lambda1, double lambda2);

struct SvmSolution {
    LinearModel model;
    std::vector<double> alpha;
    double dual_objective = 0;
    int epochs = 0;
};

// L2-regularized hinge-loss SVM via dual coordinate descent with a random
// permutation per epoch; stops when the largest projected-gradient
// violation drops below tolerance. Throws EmptyBatch.
SvmSolution svm_train_full(const std::vector<Example>& batch, double C, uint64_t seed = 1,
                           double tolerance = 1e-6, int max_epochs = 4000);
LinearModel svm_train(const std::vector<Example>& batch, double C, uint64_t seed = 1);

// Dual objective 0.5*a^T Q a - e^T a for a given multiplier vector.
double svm_dual_objective(const std::vector<Example>& batch, const std::vector<double>& alpha);

enum class SvmVariant { once, single, multi_once, multi };

// Batch retraining policy over a stream of fixed-size batches. "once" and
// "multi_once" train at initialization and never again; "single" retrains
// on the most recent batch, "multi" on the most recent `window` batches.
class SvmVariantState {
public:
    SvmVariantState(SvmVariant variant, double C, size_t window = 10, uint64_t seed = 1);

    // Initialization batches, oldest first. once/single train on the last
    // one, multi_once/multi on all of them.
    void init(const std::vector<std::vector<Example>>& init_batches);

    // A completed batch; retrains when the variant calls for it.
    void step(const std::vector<Example>& new_batch);

    const LinearModel& model() const { return model_; }
    size_t window_batches() const { return history_.size(); }

private:
    void retrain();

    SvmVariant variant_;
    double C_;
    size_t window_;
    uint64_t seed_;
    std::deque<std::vector<Example>> history_;
    LinearModel model_;
};

// Streaming learner interface: one predict and one update per round.
class OnlineLearner {
public:
    virtual ~OnlineLearner() = default;
    virtual Prediction predict(const FeatureVector& x) const = 0;
    virtual void update(const Example& ex) = 0;
};

class PerceptronLearner final : public OnlineLearner {
public:
    Prediction predict(const FeatureVector& x) const override { return phishdef::predict(model_, x); }
    void update(const Example& ex) override { perceptron_update(model_, ex); }
    const LinearModel& model() const { return model_; }

private:
    LinearModel model_;
};

class CwLearner final : public OnlineLearner {
public:
    explicit CwLearner(double eta);
    Prediction predict(const FeatureVector& x) const override { return phishdef::predict(model_, x); }
    void update(const Example& ex) override { cw_update(model_, ex, eta_); }
    const GaussianModel& model() const { return model_; }

private:
    GaussianModel model_;
    double eta_;
};

class ArowLearner final : public OnlineLearner {
public:
    ArowLearner(double lambda1, double lambda2);
    Prediction predict(const FeatureVector& x) const override { return phishdef::predict(model_, x); }
    void update(const Example& ex) override { arow_update(model_, ex, lambda1_, lambda2_); }
    const GaussianModel& model() const { return model_; }

private:
    GaussianModel model_;
    double lambda1_, lambda2_;
};

} // namespace phishdef
