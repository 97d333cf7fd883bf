#pragma once

#include <filesystem>
#include <string>

#include "phishdef/eval.hpp"
#include "phishdef/learners.hpp"

namespace phishdef {

// Serialized classifier: the frozen feature dictionary, the scaling caps it
// was trained with, and the weight (and variance, for Gaussian learners)
// vectors. The on-disk form is line-oriented text with a fixed header;
// save(load(f)) is byte-identical to f.
struct ModelFile {
    int format_version = 1;
    LearnerFamily learner = LearnerFamily::arow;
    FeatureMode feature_mode = FeatureMode::lexical;
    ScalingCaps caps;
    Hyperparameters hyper;
    FeatureDictionary dict;
    bool gaussian = true;
    std::vector<double> weights;   // w, or mu for Gaussian learners
    std::vector<double> variances; // sigma (Gaussian only)
    uint64_t trained_examples = 0;
    uint64_t seed = 0;

    Prediction classify(const RawUrl& url, const ExternalMap* external = nullptr) const;
};

ModelFile make_model_file(LearnerFamily learner, const Hyperparameters& hp, const RunConfig& config,
                          FeatureDictionary dict, const LinearModel& model,
                          uint64_t trained_examples);
ModelFile make_model_file(LearnerFamily learner, const Hyperparameters& hp, const RunConfig& config,
                          FeatureDictionary dict, const GaussianModel& model,
                          uint64_t trained_examples);

// Atomic write (temp file, then rename). Throws IoError.
void save_model(const ModelFile& model, const std::filesystem::path& path);

// Throws IoError / ModelFormatError.
ModelFile load_model(const std::filesystem::path& path);

std::string learner_name(LearnerFamily family);
LearnerFamily learner_from_name(const std::string& name);
std::string feature_mode_name(FeatureMode mode);
FeatureMode feature_mode_from_name(const std::string& name);

// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

} // namespace phishdef
