#include "phishdef/eval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "phishdef/errors.hpp"
#include "phishdef/rng.hpp"

namespace phishdef {

LabeledStream interleave(const std::vector<RawUrl>& benign, const std::vector<RawUrl>& malicious,
                         const std::string& benign_source, const std::string& malicious_source) {
    LabeledStream stream;
    stream.items.reserve(benign.size() + malicious.size());
    size_t b = 0, m = 0;
    while (b < benign.size() || m < malicious.size()) {
        if (b < benign.size()) stream.items.push_back({benign[b++], Label::benign, benign_source});
        if (m < malicious.size())
            stream.items.push_back({malicious[m++], Label::malicious, malicious_source});
    }
    return stream;
}

FeatureVector featurize_url(const RawUrl& url, const RunConfig& config, FeatureDictionary& dict) {
    UrlParts parts = parse_url(url);
    auto bow = extract_bag_of_words(parts);

    OrFeatureSet or_set;
    const OrFeatureSet* or_ptr = nullptr;
    if (config.feature_mode != FeatureMode::lexical_no_or) {
        or_set = extract_or_features(parts, config.blacklist);
        or_ptr = &or_set;
    }

    ExternalFeatures ext;
    const ExternalFeatures* ext_ptr = nullptr;
    if (config.feature_mode == FeatureMode::full) {
        const ExternalRecord* record = nullptr;
        if (config.external != nullptr) {
            auto it = config.external->find(url.text());
            if (it != config.external->end()) record = &it->second;
        }
        ext = extract_external(record);
        ext_ptr = &ext;
    }

    return vectorize(bow, or_ptr, ext_ptr, config.caps, dict);
}

namespace {

struct Scorer {
    size_t mistakes = 0;
    RunResult result;

    void score(Prediction pred, Label truth) {
        ++result.scored;
        if (pred.label != truth) {
            ++mistakes;
            if (truth == Label::benign)
                ++result.false_positives;
            else
                ++result.false_negatives;
        }
        result.cumulative_error.emplace_back(result.scored,
                                             static_cast<double>(mistakes) / result.scored);
    }

    RunResult finish() {
        result.final_error =
            result.scored == 0 ? 0.0 : static_cast<double>(mistakes) / result.scored;
        return std::move(result);
    }
};

} // namespace

RunResult run_online(OnlineLearner& learner, const LabeledStream& stream, const RunConfig& config,
                     FeatureDictionary* out_dict) {
    if (config.init_size >= stream.size()) throw InitTooLarge();

    FeatureDictionary dict;
    Scorer scorer;
    scorer.result.cumulative_error.reserve(stream.size() - config.init_size);

    for (size_t i = 0; i < stream.items.size(); ++i) {
        const StreamItem& item = stream.items[i];
        FeatureVector x = featurize_url(item.url, config, dict);
        if (i >= config.init_size) scorer.score(learner.predict(x), item.label);
        learner.update({std::move(x), item.label});
    }
    if (out_dict != nullptr) *out_dict = std::move(dict);
    return scorer.finish();
}

RunResult run_batch_svm(SvmVariant variant, const LabeledStream& stream, const RunConfig& config,
                        double C, FeatureDictionary* out_dict, LinearModel* out_model) {
    const size_t B = config.batch_size;
    const size_t init_items = config.init_batches * B;
    if (stream.size() < init_items) throw StreamTooShort();

    FeatureDictionary dict;
    SvmVariantState state(variant, C, config.init_batches, config.seed);

    std::vector<std::vector<Example>> init_batches;
    std::vector<Example> batch;
    batch.reserve(B);
    size_t i = 0;
    for (; i < init_items; ++i) {
        const StreamItem& item = stream.items[i];
        batch.push_back({featurize_url(item.url, config, dict), item.label});
        if (batch.size() == B) {
            init_batches.push_back(std::move(batch));
            batch.clear();
        }
    }
    state.init(init_batches);

    Scorer scorer;
    for (; i < stream.items.size(); ++i) {
        const StreamItem& item = stream.items[i];
        FeatureVector x = featurize_url(item.url, config, dict);
        scorer.score(predict(state.model(), x), item.label);
        batch.push_back({std::move(x), item.label});
        if (batch.size() == B) {
            state.step(batch);
            batch.clear();
        }
    }
    if (out_dict != nullptr) *out_dict = std::move(dict);
    if (out_model != nullptr) *out_model = state.model();
    return scorer.finish();
}

LabeledStream inject_noise(const LabeledStream& stream, double rate, uint64_t seed) {
    LabeledStream out = stream;
    const size_t n = out.size();
    const size_t flips = static_cast<size_t>(std::llround(rate * static_cast<double>(n)));

    std::vector<size_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    Rng rng(seed);
    for (size_t j = 0; j < flips; ++j) {
        size_t r = j + static_cast<size_t>(rng.below(n - j));
        std::swap(indices[j], indices[r]);
        StreamItem& item = out.items[indices[j]];
        item.label = item.label == Label::benign ? Label::malicious : Label::benign;
        item.noise_flipped = !item.noise_flipped;
    }
    return out;
}

std::unique_ptr<OnlineLearner> make_learner(LearnerFamily family, const Hyperparameters& hp) {
    switch (family) {
    case LearnerFamily::op: return std::make_unique<PerceptronLearner>();
    case LearnerFamily::cw: return std::make_unique<CwLearner>(hp.eta);
    case LearnerFamily::arow: return std::make_unique<ArowLearner>(hp.lambda1, hp.lambda2);
    case LearnerFamily::svm: break;
    }
    return nullptr;
}

Hyperparameters cross_validate(LearnerFamily family, const std::vector<Hyperparameters>& grid,
                               const LabeledStream& init_data, int k, const RunConfig& config) {
    const size_t n = init_data.size();
    if (k < 2 || n < static_cast<size_t>(k)) throw TooFewExamples();

    double best_error = std::numeric_limits<double>::infinity();
    const Hyperparameters* best = nullptr;

    for (const auto& hp : grid) {
        double total_error = 0;
        for (int fold = 0; fold < k; ++fold) {
            const size_t lo = n * fold / k;
            const size_t hi = n * (fold + 1) / k;

            FeatureDictionary dict;
            size_t mistakes = 0;

            if (family == LearnerFamily::svm) {
                std::vector<Example> train;
                for (size_t i = 0; i < n; ++i) {
                    if (i >= lo && i < hi) continue;
                    train.push_back(
                        {featurize_url(init_data.items[i].url, config, dict), init_data.items[i].label});
                }
                LinearModel model = svm_train(train, hp.C, config.seed + fold);
                dict.freeze();
                for (size_t i = lo; i < hi; ++i) {
                    FeatureVector x = featurize_url(init_data.items[i].url, config, dict);
                    if (predict(model, x).label != init_data.items[i].label) ++mistakes;
                }
            } else {
                auto learner = make_learner(family, hp);
                for (size_t i = 0; i < n; ++i) {
                    if (i >= lo && i < hi) continue;
                    learner->update(
                        {featurize_url(init_data.items[i].url, config, dict), init_data.items[i].label});
                }
                dict.freeze();
                for (size_t i = lo; i < hi; ++i) {
                    FeatureVector x = featurize_url(init_data.items[i].url, config, dict);
                    if (learner->predict(x).label != init_data.items[i].label) ++mistakes;
                }
            }
            total_error += hi > lo ? static_cast<double>(mistakes) / (hi - lo) : 0.0;
        }
        const double mean_error = total_error / k;
        if (mean_error < best_error) {
            best_error = mean_error;
            best = &hp;
        }
    }
    if (best == nullptr) throw Error("empty hyperparameter grid");
    return *best;
}

} // namespace phishdef
