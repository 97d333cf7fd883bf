#include "phishdef/model_io.hpp"

#include <charconv>
#include <cinttypes>
#include <fstream>
#include <sstream>

#include "phishdef/errors.hpp"

namespace phishdef {

namespace {

constexpr const char* kHeader = "PHISHDEF-MODEL v1";

} // namespace

std::string format_double(double value) {
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

std::string learner_name(LearnerFamily family) {
    switch (family) {
    case LearnerFamily::op: return "op";
    case LearnerFamily::cw: return "cw";
    case LearnerFamily::arow: return "arow";
    case LearnerFamily::svm: return "svm";
    }
    return "?";
}

LearnerFamily learner_from_name(const std::string& name) {
    if (name == "op") return LearnerFamily::op;
    if (name == "cw") return LearnerFamily::cw;
    if (name == "arow") return LearnerFamily::arow;
    if (name == "svm") return LearnerFamily::svm;
    throw ModelFormatError("unknown learner '" + name + "'");
}

std::string feature_mode_name(FeatureMode mode) {
    switch (mode) {
    case FeatureMode::lexical: return "lexical";
    case FeatureMode::lexical_no_or: return "lexical-no-or";
    case FeatureMode::full: return "full";
    }
    return "?";
}

FeatureMode feature_mode_from_name(const std::string& name) {
    if (name == "lexical") return FeatureMode::lexical;
    if (name == "lexical-no-or") return FeatureMode::lexical_no_or;
    if (name == "full") return FeatureMode::full;
    throw ModelFormatError("unknown feature mode '" + name + "'");
}

Prediction ModelFile::classify(const RawUrl& url, const ExternalMap* external) const {
    RunConfig config;
    config.feature_mode = feature_mode;
    config.caps = caps;
    config.external = external;
    FeatureDictionary frozen = dict; // already frozen; unknown tokens drop out
    FeatureVector x = featurize_url(url, config, frozen);
    if (gaussian) {
        GaussianModel model;
        model.mu = weights;
        model.sigma = variances;
        return predict(model, x);
    }
    LinearModel model;
    model.w = weights;
    return predict(model, x);
}

namespace {

ModelFile base_model_file(LearnerFamily learner, const Hyperparameters& hp,
                          const RunConfig& config, FeatureDictionary dict,
                          uint64_t trained_examples) {
    ModelFile mf;
    mf.learner = learner;
    mf.feature_mode = config.feature_mode;
    mf.caps = config.caps;
    mf.hyper = hp;
    dict.freeze();
    mf.dict = std::move(dict);
    mf.trained_examples = trained_examples;
    mf.seed = config.seed;
    return mf;
}

} // namespace

ModelFile make_model_file(LearnerFamily learner, const Hyperparameters& hp, const RunConfig& config,
                          FeatureDictionary dict, const LinearModel& model,
                          uint64_t trained_examples) {
    ModelFile mf = base_model_file(learner, hp, config, std::move(dict), trained_examples);
    mf.gaussian = false;
    mf.weights = model.w;
    mf.weights.resize(mf.dict.size(), 0.0);
    return mf;
}

ModelFile make_model_file(LearnerFamily learner, const Hyperparameters& hp, const RunConfig& config,
                          FeatureDictionary dict, const GaussianModel& model,
                          uint64_t trained_examples) {
    ModelFile mf = base_model_file(learner, hp, config, std::move(dict), trained_examples);
    mf.gaussian = true;
    mf.weights = model.mu;
    mf.weights.resize(mf.dict.size(), 0.0);
    mf.variances = model.sigma;
    mf.variances.resize(mf.dict.size(), 1.0);
    return mf;
}

void save_model(const ModelFile& model, const std::filesystem::path& path) {
    std::ostringstream out;
    out << kHeader << "\n";
    out << "learner " << learner_name(model.learner) << "\n";
    out << "features " << feature_mode_name(model.feature_mode) << "\n";
    out << "caps";
    for (long cap : model.caps.as_array()) out << ' ' << cap;
    out << "\n";
    switch (model.learner) {
    case LearnerFamily::op: break;
    case LearnerFamily::cw: out << "eta " << format_double(model.hyper.eta) << "\n"; break;
    case LearnerFamily::arow:
        out << "lambda " << format_double(model.hyper.lambda1) << ' '
            << format_double(model.hyper.lambda2) << "\n";
        break;
    case LearnerFamily::svm: out << "C " << format_double(model.hyper.C) << "\n"; break;
    }
    out << "trained " << model.trained_examples << "\n";
    out << "seed " << model.seed << "\n";
    out << "dim " << model.dict.size() << "\n";

    auto entries = model.dict.sorted_entries();
    out << "dict " << entries.size() << "\n";
    for (const auto& [key, index] : entries) out << index << ' ' << key << "\n";

    size_t n_weights = 0;
    for (double w : model.weights)
        if (w != 0.0) ++n_weights;
    out << "weights " << n_weights << "\n";
    for (size_t i = 0; i < model.weights.size(); ++i) {
        if (model.weights[i] != 0.0) out << i << ' ' << format_double(model.weights[i]) << "\n";
    }
    if (model.gaussian) {
        size_t n_sigma = 0;
        for (double s : model.variances)
            if (s != 1.0) ++n_sigma;
        out << "sigma " << n_sigma << "\n";
        for (size_t i = 0; i < model.variances.size(); ++i) {
            if (model.variances[i] != 1.0)
                out << i << ' ' << format_double(model.variances[i]) << "\n";
        }
    }
    out << "end\n";

    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw IoError("cannot write '" + tmp.string() + "'");
        f << out.str();
        if (!f.flush()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to '" + path.string() + "' failed: " + ec.message());
}

namespace {

std::string next_line(std::istream& in, const char* what) {
    std::string line;
    if (!std::getline(in, line)) throw ModelFormatError(std::string("unexpected end before ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

// "tag rest-of-line"; throws if the tag does not match.
std::string expect_tag(std::istream& in, const std::string& tag) {
    std::string line = next_line(in, tag.c_str());
    if (line == tag) return "";
    if (line.rfind(tag + " ", 0) != 0) throw ModelFormatError("expected '" + tag + "' line");
    return line.substr(tag.size() + 1);
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ModelFormatError("bad number '" + s + "'");
    return v;
}

uint64_t parse_u64(const std::string& s) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ModelFormatError("bad count '" + s + "'");
    return v;
}

} // namespace

ModelFile load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model file '" + path.string() + "'");

    if (next_line(in, "header") != kHeader) throw ModelFormatError("bad header");

    ModelFile mf;
    mf.learner = learner_from_name(expect_tag(in, "learner"));
    mf.feature_mode = feature_mode_from_name(expect_tag(in, "features"));

    {
        std::istringstream caps(expect_tag(in, "caps"));
        std::array<long, kNumOrCaps> arr{};
        for (auto& c : arr) {
            if (!(caps >> c) || c <= 0) throw ModelFormatError("bad caps line");
        }
        mf.caps = ScalingCaps::from_array(arr);
    }

    switch (mf.learner) {
    case LearnerFamily::op: break;
    case LearnerFamily::cw: mf.hyper.eta = parse_double(expect_tag(in, "eta")); break;
    case LearnerFamily::arow: {
        std::istringstream ls(expect_tag(in, "lambda"));
        std::string l1, l2;
        if (!(ls >> l1 >> l2)) throw ModelFormatError("bad lambda line");
        mf.hyper.lambda1 = parse_double(l1);
        mf.hyper.lambda2 = parse_double(l2);
        break;
    }
    case LearnerFamily::svm: mf.hyper.C = parse_double(expect_tag(in, "C")); break;
    }
    mf.gaussian = mf.learner == LearnerFamily::cw || mf.learner == LearnerFamily::arow;

    mf.trained_examples = parse_u64(expect_tag(in, "trained"));
    mf.seed = parse_u64(expect_tag(in, "seed"));
    const uint64_t dim = parse_u64(expect_tag(in, "dim"));

    const uint64_t dict_count = parse_u64(expect_tag(in, "dict"));
    if (dict_count != dim) throw ModelFormatError("dict size does not match dim");
    std::vector<std::pair<std::string, uint32_t>> entries;
    entries.reserve(dict_count);
    for (uint64_t i = 0; i < dict_count; ++i) {
        std::string line = next_line(in, "dict entry");
        size_t space = line.find(' ');
        if (space == std::string::npos) throw ModelFormatError("bad dict entry '" + line + "'");
        uint32_t index = static_cast<uint32_t>(parse_u64(line.substr(0, space)));
        entries.emplace_back(line.substr(space + 1), index);
    }
    mf.dict = FeatureDictionary::from_entries(entries);

    auto read_sparse = [&](const char* tag, std::vector<double>& dense, double fill) {
        dense.assign(dim, fill);
        const uint64_t count = parse_u64(expect_tag(in, tag));
        for (uint64_t i = 0; i < count; ++i) {
            std::string line = next_line(in, tag);
            size_t space = line.find(' ');
            if (space == std::string::npos) throw ModelFormatError("bad entry '" + line + "'");
            uint64_t index = parse_u64(line.substr(0, space));
            if (index >= dim) throw ModelFormatError("index out of range in " + std::string(tag));
            dense[index] = parse_double(line.substr(space + 1));
        }
    };
    read_sparse("weights", mf.weights, 0.0);
    if (mf.gaussian) read_sparse("sigma", mf.variances, 1.0);

    if (next_line(in, "end") != "end") throw ModelFormatError("missing end marker");
    return mf;
}

} // namespace phishdef
