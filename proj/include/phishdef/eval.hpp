#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "phishdef/external.hpp"
#include "phishdef/learners.hpp"
#include "phishdef/url.hpp"

namespace phishdef {

struct StreamItem {
    RawUrl url;
    Label label;
    std::string source;        // provenance tag
    bool noise_flipped = false;
};

// Evaluation-ordered sequence of labeled URLs. The order set at
// construction is the scoring order and is never re-sorted.
struct LabeledStream {
    std::vector<StreamItem> items;

    size_t size() const { return items.size(); }
};

// Strict alternation benign, malicious, benign, ... preserving within-class
// order; the tail of the longer list is appended once the other runs out.
LabeledStream interleave(const std::vector<RawUrl>& benign, const std::vector<RawUrl>& malicious,
                         const std::string& benign_source = "benign",
                         const std::string& malicious_source = "malicious");

enum class FeatureMode { lexical, lexical_no_or, full };

struct RunConfig {
    size_t init_size = 0;      // leading items used for training only
    size_t batch_size = 400;   // SVM batch protocol
    size_t init_batches = 10;  // SVM initialization segment, in batches
    FeatureMode feature_mode = FeatureMode::lexical;
    ScalingCaps caps;
    Blacklist blacklist = Blacklist::standard();
    const ExternalMap* external = nullptr; // required for FeatureMode::full
    uint64_t seed = 1;
};

// Per-run outcome: the cumulative error curve over scored items plus the
// confusion totals. FP + FN equals the number of mistakes.
struct RunResult {
    std::vector<std::pair<size_t, double>> cumulative_error; // (step, mistakes/step)
    size_t false_positives = 0;
    size_t false_negatives = 0;
    size_t scored = 0;
    double final_error = 0;
};

// One URL through the configured feature pipeline: bag-of-words always, OR
// features unless disabled, external features in full mode (with the
// missing-record marker when no record exists).
FeatureVector featurize_url(const RawUrl& url, const RunConfig& config, FeatureDictionary& dict);

// Predict-then-update protocol: the first init_size items only train; every
// later item is scored against its (possibly noisy) label with the current
// model before the model learns from it. Throws InitTooLarge. The grown
// feature dictionary is returned through out_dict when given.
RunResult run_online(OnlineLearner& learner, const LabeledStream& stream, const RunConfig& config,
                     FeatureDictionary* out_dict = nullptr);

// Batch replay: the first init_batches full batches initialize the variant,
// every later item is scored with the current model, and retraining happens
// at batch boundaries only. Throws StreamTooShort.
RunResult run_batch_svm(SvmVariant variant, const LabeledStream& stream, const RunConfig& config,
                        double C, FeatureDictionary* out_dict = nullptr,
                        LinearModel* out_model = nullptr);

// Flips the labels of round(rate * size) distinct items chosen by seed and
// toggles their noise flags. Scoring treats flipped labels as ground truth.
LabeledStream inject_noise(const LabeledStream& stream, double rate, uint64_t seed);

enum class LearnerFamily { op, cw, arow, svm };

struct Hyperparameters {
    double eta = 0.73;
    double lambda1 = 0.5;
    double lambda2 = 0.5;
    double C = 32;
};

std::unique_ptr<OnlineLearner> make_learner(LearnerFamily family, const Hyperparameters& hp);

// k-fold cross-validation over the initialization data: contiguous folds,
// lowest mean validation error wins, ties broken by grid order. Throws
// TooFewExamples when the data cannot fill k folds.
Hyperparameters cross_validate(LearnerFamily family, const std::vector<Hyperparameters>& grid,
                               const LabeledStream& init_data, int k, const RunConfig& config);

} // namespace phishdef
