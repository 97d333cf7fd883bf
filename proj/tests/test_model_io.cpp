#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "phishdef/corpus.hpp"
#include "phishdef/model_io.hpp"

using namespace phishdef;

namespace {

std::filesystem::path temp_path(const char* stem) {
    return std::filesystem::temp_directory_path() /
           (std::string(stem) + "_" + std::to_string(::getpid()) + ".model");
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

ModelFile train_small_arow(uint64_t seed) {
    CorpusSpec spec;
    spec.size = 600;
    spec.seed = seed;
    Corpus corpus = generate_corpus(spec);
    auto stream = interleave(corpus.benign, corpus.malicious);
    RunConfig config;
    config.init_size = 200;
    config.seed = seed;
    ArowLearner learner(0.5, 0.5);
    FeatureDictionary dict;
    run_online(learner, stream, config, &dict);
    Hyperparameters hp;
    return make_model_file(LearnerFamily::arow, hp, config, std::move(dict), learner.model(),
                           stream.size());
}

} // namespace

TEST_CASE("model save/load/save round-trips byte-identically") {
    ModelFile model = train_small_arow(71);
    auto p1 = temp_path("roundtrip1");
    auto p2 = temp_path("roundtrip2");
    save_model(model, p1);
    ModelFile loaded = load_model(p1);
    save_model(loaded, p2);
    CHECK(slurp(p1) == slurp(p2));
    CHECK(!slurp(p1).empty());
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);
}

TEST_CASE("a loaded model classifies exactly like the in-process model") {
    ModelFile model = train_small_arow(73);
    auto p = temp_path("parity");
    save_model(model, p);
    ModelFile loaded = load_model(p);
    std::filesystem::remove(p);

    CorpusSpec spec;
    spec.size = 400;
    spec.seed = 99; // unseen URLs
    Corpus corpus = generate_corpus(spec);
    auto check_all = [&](const std::vector<RawUrl>& urls) {
        for (const auto& url : urls) {
            Prediction a = model.classify(url);
            Prediction b = loaded.classify(url);
            CHECK(a.label == b.label);
            CHECK(a.margin == b.margin);
        }
    };
    check_all(corpus.benign);
    check_all(corpus.malicious);
}

TEST_CASE("a constructed blacklist-only model flags blacklist words") {
    ModelFile model;
    model.learner = LearnerFamily::op;
    model.gaussian = false;
    model.dict.freeze();
    model.weights.assign(kNumOrFeatures, 0.0);
    model.weights[2] = 1.0; // the blacklist slot

    Prediction hit = model.classify(RawUrl("evil.com/paypal/login.html"));
    CHECK(hit.label == Label::malicious);
    CHECK(hit.margin == 1.0);

    Prediction miss = model.classify(RawUrl("example.org/article.html"));
    CHECK(miss.label == Label::malicious); // zero margin still ties to +1
    CHECK(miss.margin == 0.0);
}

TEST_CASE("zero-weight model predicts the +1 tie-break everywhere") {
    ModelFile model;
    model.learner = LearnerFamily::svm;
    model.gaussian = false;
    model.dict.freeze();
    model.weights.assign(kNumOrFeatures, 0.0);
    Prediction p = model.classify(RawUrl("anything.test/at.all"));
    CHECK(p.margin == 0.0);
    CHECK(p.label == Label::malicious);
}

TEST_CASE("corrupt model files are rejected") {
    auto p = temp_path("corrupt");
    {
        std::ofstream out(p);
        out << "NOT-A-MODEL\n";
    }
    CHECK_THROWS_AS(load_model(p), ModelFormatError);
    std::filesystem::remove(p);
    CHECK_THROWS_AS(load_model("/nonexistent/path.model"), IoError);

    ModelFile model = train_small_arow(77);
    save_model(model, p);
    std::string text = slurp(p);
    text.resize(text.size() / 2); // truncate
    {
        std::ofstream out(p, std::ios::binary);
        out << text;
    }
    CHECK_THROWS_AS(load_model(p), ModelFormatError);
    std::filesystem::remove(p);
}

TEST_CASE("format_double survives parsing for awkward values") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, 123456789.123456789, -0.0, 2.5e-300}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}
