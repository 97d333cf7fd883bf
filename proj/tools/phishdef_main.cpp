#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "phishdef/corpus.hpp"
#include "phishdef/dataset.hpp"
#include "phishdef/errors.hpp"
#include "phishdef/eval.hpp"
#include "phishdef/model_io.hpp"
#include "phishdef/similarity.hpp"

namespace {

using namespace phishdef;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw IoError("write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename to '" + path.string() + "' failed: " + ec.message());
}

struct RunOptions {
    std::string benign_path, malicious_path;
    std::string learner = "arow";
    std::string variant = "multi";
    std::string features = "lexical";
    std::string external_path;
    double eta = 0.73;
    double lambda = 0.5;
    double lambda1 = 0, lambda2 = 0; // 0 means "use --lambda"
    double C = 32;
    size_t init_size = 4000;
    size_t batch_size = 400;
    size_t init_batches = 10;
    double noise = 0;
    uint64_t seed = 1;
    bool cv = false;
    std::string model_out, curve_out, summary_out;
};

void add_run_options(CLI::App* cmd, RunOptions& opt, bool model_required) {
    cmd->add_option("--benign", opt.benign_path, "benign dataset file")->required();
    cmd->add_option("--malicious", opt.malicious_path, "malicious dataset file")->required();
    cmd->add_option("--learner", opt.learner, "op|cw|arow|svm")
        ->check(CLI::IsMember({"op", "cw", "arow", "svm"}));
    cmd->add_option("--variant", opt.variant, "svm retraining variant")
        ->check(CLI::IsMember({"once", "single", "multionce", "multi"}));
    cmd->add_option("--features", opt.features, "lexical|lexical-no-or|full")
        ->check(CLI::IsMember({"lexical", "lexical-no-or", "full"}));
    cmd->add_option("--external", opt.external_path, "sidecar file with external records");
    cmd->add_option("--eta", opt.eta, "CW confidence level, in (0.5, 1)");
    cmd->add_option("--lambda", opt.lambda, "AROW lambda (sets lambda1 = lambda2)");
    cmd->add_option("--lambda1", opt.lambda1, "AROW lambda1");
    cmd->add_option("--lambda2", opt.lambda2, "AROW lambda2");
    cmd->add_option("--C", opt.C, "SVM box constraint");
    cmd->add_option("--init", opt.init_size, "initialization items (online learners)");
    cmd->add_option("--batch", opt.batch_size, "SVM batch size");
    cmd->add_option("--init-batches", opt.init_batches, "SVM initialization batches");
    cmd->add_option("--noise", opt.noise, "label noise rate in [0, 1]")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_flag("--cv", opt.cv, "pick hyperparameters by cross-validation on the init data");
    auto* model = cmd->add_option("--model-out", opt.model_out, "write the trained model here");
    if (model_required) model->required();
    cmd->add_option("--curve-out", opt.curve_out, "write the cumulative-error series here");
    cmd->add_option("--summary-out", opt.summary_out, "write the run summary here");
}

std::vector<Hyperparameters> default_grid(LearnerFamily family) {
    std::vector<Hyperparameters> grid;
    switch (family) {
    case LearnerFamily::op: grid.push_back({}); break;
    case LearnerFamily::cw:
        for (double eta : {0.55, 0.58, 0.62, 0.66, 0.70, 0.73, 0.79, 0.84, 0.86, 0.90}) {
            Hyperparameters hp;
            hp.eta = eta;
            grid.push_back(hp);
        }
        break;
    case LearnerFamily::arow:
        for (double lambda : {0.5, 5.0, 50.0}) {
            Hyperparameters hp;
            hp.lambda1 = hp.lambda2 = lambda;
            grid.push_back(hp);
        }
        break;
    case LearnerFamily::svm:
        for (int p = 0; p <= 10; ++p) {
            Hyperparameters hp;
            hp.C = static_cast<double>(1 << p);
            grid.push_back(hp);
        }
        break;
    }
    return grid;
}

int run_train_or_evaluate(const RunOptions& opt) {
    const LearnerFamily family = learner_from_name(opt.learner);

    Hyperparameters hp;
    hp.eta = opt.eta;
    hp.lambda1 = opt.lambda1 > 0 ? opt.lambda1 : opt.lambda;
    hp.lambda2 = opt.lambda2 > 0 ? opt.lambda2 : opt.lambda;
    hp.C = opt.C;
    if (family == LearnerFamily::cw && (hp.eta <= 0.5 || hp.eta >= 1.0)) {
        std::cerr << "error: --eta must be in (0.5, 1)\n";
        return kExitUsage;
    }
    if (family == LearnerFamily::arow && (hp.lambda1 <= 0 || hp.lambda2 <= 0)) {
        std::cerr << "error: lambdas must be positive\n";
        return kExitUsage;
    }
    if (family == LearnerFamily::svm && hp.C <= 0) {
        std::cerr << "error: --C must be positive\n";
        return kExitUsage;
    }

    RunConfig config;
    config.feature_mode = feature_mode_from_name(opt.features);
    config.batch_size = opt.batch_size;
    config.init_batches = opt.init_batches;
    config.seed = opt.seed;

    ExternalMap external;
    if (config.feature_mode == FeatureMode::full) {
        if (opt.external_path.empty()) {
            std::cerr << "error: --features full requires --external\n";
            return kExitUsage;
        }
        external = load_sidecar(opt.external_path);
        config.external = &external;
    }

    auto benign = load_dataset(opt.benign_path);
    auto malicious = load_dataset(opt.malicious_path);
    LabeledStream stream = interleave(urls_of(benign), urls_of(malicious));
    if (opt.noise > 0) stream = inject_noise(stream, opt.noise, opt.seed);

    config.init_size = opt.init_size;
    const size_t svm_init_items = opt.init_batches * opt.batch_size;

    if (opt.cv) {
        const size_t init_len =
            std::min(stream.size(), family == LearnerFamily::svm ? svm_init_items : opt.init_size);
        LabeledStream init_data;
        init_data.items.assign(stream.items.begin(), stream.items.begin() + init_len);
        hp = cross_validate(family, default_grid(family), init_data, 5, config);
    }

    FeatureDictionary dict;
    RunResult result;
    ModelFile model_file;
    if (family == LearnerFamily::svm) {
        SvmVariant variant = opt.variant == "once"        ? SvmVariant::once
                             : opt.variant == "single"    ? SvmVariant::single
                             : opt.variant == "multionce" ? SvmVariant::multi_once
                                                          : SvmVariant::multi;
        LinearModel model;
        result = run_batch_svm(variant, stream, config, hp.C, &dict, &model);
        model_file = make_model_file(family, hp, config, std::move(dict), model, stream.size());
    } else {
        auto learner = make_learner(family, hp);
        result = run_online(*learner, stream, config, &dict);
        if (family == LearnerFamily::op) {
            model_file = make_model_file(family, hp, config, std::move(dict),
                                         static_cast<PerceptronLearner*>(learner.get())->model(),
                                         stream.size());
        } else if (family == LearnerFamily::cw) {
            model_file = make_model_file(family, hp, config, std::move(dict),
                                         static_cast<CwLearner*>(learner.get())->model(),
                                         stream.size());
        } else {
            model_file = make_model_file(family, hp, config, std::move(dict),
                                         static_cast<ArowLearner*>(learner.get())->model(),
                                         stream.size());
        }
    }

    std::ostringstream summary;
    summary << "learner " << opt.learner << "\n";
    summary << "features " << opt.features << "\n";
    if (family == LearnerFamily::cw) summary << "eta " << format_double(hp.eta) << "\n";
    if (family == LearnerFamily::arow) {
        summary << "lambda1 " << format_double(hp.lambda1) << "\n";
        summary << "lambda2 " << format_double(hp.lambda2) << "\n";
    }
    if (family == LearnerFamily::svm) {
        summary << "C " << format_double(hp.C) << "\n";
        summary << "variant " << opt.variant << "\n";
        summary << "batch " << opt.batch_size << "\n";
        summary << "init_batches " << opt.init_batches << "\n";
    } else {
        summary << "init " << opt.init_size << "\n";
    }
    summary << "stream_size " << stream.size() << "\n";
    summary << "noise " << format_double(opt.noise) << "\n";
    summary << "seed " << opt.seed << "\n";
    summary << "scored " << result.scored << "\n";
    summary << "final_error " << format_double(result.final_error) << "\n";
    summary << "false_positives " << result.false_positives << "\n";
    summary << "false_negatives " << result.false_negatives << "\n";

    std::cout << summary.str();
    if (!opt.summary_out.empty()) write_text_file(opt.summary_out, summary.str());

    if (!opt.curve_out.empty()) {
        std::ostringstream curve;
        for (const auto& [step, error] : result.cumulative_error) {
            curve << step << ' ' << format_double(error) << "\n";
        }
        write_text_file(opt.curve_out, curve.str());
    }
    if (!opt.model_out.empty()) save_model(model_file, opt.model_out);
    return kExitOk;
}

int run_extract(const std::string& data_path, bool no_or, const std::string& external_path,
                const std::string& out_path) {
    ExternalMap external;
    const bool use_external = !external_path.empty();
    if (use_external) external = load_sidecar(external_path);

    auto records = load_dataset(data_path);
    const Blacklist blacklist = Blacklist::standard();
    const ScalingCaps caps;

    std::ostringstream out;
    for (const auto& record : records) {
        UrlParts parts = parse_url(record.url);
        out << "url\t" << record.url.text() << "\n";
        for (const auto& key : extract_bag_of_words(parts)) {
            out << key << "\t1\t1\n";
        }
        if (!no_or) {
            OrFeatureSet f = extract_or_features(parts, blacklist);
            const auto& keys = or_feature_keys();
            const long raw[kNumOrFeatures] = {
                f.url_len, f.url_n_dot, f.url_blacklist ? 1 : 0, f.dom_len, f.dom_is_ip ? 1 : 0,
                f.dom_has_port ? 1 : 0, f.dom_n_token, f.dom_n_hyphen, f.dom_max_token_len,
                f.dir_len, f.dir_n_subdir, f.dir_max_subdir_len, f.dir_max_dot, f.dir_max_delim,
                f.file_len, f.file_n_dot, f.file_n_delim, f.arg_len, f.arg_n_var,
                f.arg_max_value_len, f.arg_max_delim};
            FeatureDictionary dict;
            FeatureVector vec = vectorize({}, &f, nullptr, caps, dict);
            for (uint32_t i = 0; i < kNumOrFeatures; ++i) {
                out << keys[i] << "\t" << raw[i] << "\t" << format_double(vec.value_at(i)) << "\n";
            }
        }
        if (use_external) {
            auto it = external.find(record.url.text());
            const ExternalRecord* rec = it == external.end() ? nullptr : &it->second;
            for (const auto& [key, value] : extract_external(rec)) {
                out << key << "\t" << format_double(value) << "\t" << format_double(value) << "\n";
            }
        }
        out << "\n";
    }

    if (out_path.empty())
        std::cout << out.str();
    else
        write_text_file(out_path, out.str());
    return kExitOk;
}

int run_classify(const std::string& model_path, const std::string& url_text,
                 const std::string& external_path) {
    ModelFile model = load_model(model_path);
    ExternalMap external;
    const ExternalMap* ext = nullptr;
    if (!external_path.empty()) {
        external = load_sidecar(external_path);
        ext = &external;
    }
    Prediction pred = model.classify(RawUrl(url_text), ext);
    std::cout << (pred.label == Label::malicious ? "phishing" : "benign") << ' '
              << format_double(pred.margin) << "\n";
    return kExitOk;
}

int run_similarity(const std::string& data_path, long tau, bool all,
                   const std::string& dist_out, const std::string& ccdf_out,
                   const std::string& cdf_out) {
    auto records = load_dataset(data_path);
    std::vector<RawUrl> urls = all ? urls_of(records) : urls_with_label(records, Label::malicious);

    DistanceStats stats = compute_distances(urls, tau);

    std::ostringstream dist;
    for (size_t i = 0; i < stats.n; ++i) {
        dist << i + 1 << ' ' << stats.delta_min[i] << ' ' << stats.delta_max[i] << "\n";
    }
    if (dist_out.empty())
        std::cout << dist.str();
    else
        write_text_file(dist_out, dist.str());

    if (!ccdf_out.empty()) {
        std::ostringstream s;
        for (const auto& [t, frac] : ccdf(stats.delta_min)) s << t << ' ' << format_double(frac) << "\n";
        write_text_file(ccdf_out, s.str());
    }
    if (!cdf_out.empty()) {
        std::ostringstream s;
        for (const auto& [t, frac] : cdf(stats.delta_max)) s << t << ' ' << format_double(frac) << "\n";
        write_text_file(cdf_out, s.str());
    }
    return kExitOk;
}

int run_gen_corpus(const CorpusSpec& spec, const std::string& benign_out,
                   const std::string& malicious_out, const std::string& sidecar_out) {
    Corpus corpus = generate_corpus(spec);

    std::vector<DatasetRecord> benign, malicious;
    for (const auto& url : corpus.benign) benign.push_back({Label::benign, url});
    for (const auto& url : corpus.malicious) malicious.push_back({Label::malicious, url});
    write_dataset(benign, benign_out);
    write_dataset(malicious, malicious_out);

    if (!sidecar_out.empty()) {
        std::ostringstream s;
        for (const auto& line : generate_sidecar_lines(corpus, spec.seed + 1)) s << line << "\n";
        write_text_file(sidecar_out, s.str());
    }
    std::cout << "benign " << benign.size() << "\nmalicious " << malicious.size() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phishing-URL classification from lexical features"};
    app.require_subcommand(1);

    RunOptions train_opt, eval_opt;
    auto* train_cmd = app.add_subcommand("train", "train a classifier over an interleaved stream");
    add_run_options(train_cmd, train_opt, /*model_required=*/true);
    auto* eval_cmd = app.add_subcommand("evaluate", "run a streaming evaluation");
    add_run_options(eval_cmd, eval_opt, /*model_required=*/false);

    std::string extract_data, extract_external_path, extract_out;
    bool extract_no_or = false;
    auto* extract_cmd = app.add_subcommand("extract", "dump per-URL features");
    extract_cmd->add_option("--data", extract_data, "dataset file")->required();
    extract_cmd->add_flag("--no-or", extract_no_or, "omit the obfuscation-resistant features");
    extract_cmd->add_option("--external", extract_external_path, "sidecar file");
    extract_cmd->add_option("--out", extract_out, "output file (default stdout)");

    std::string classify_model, classify_url, classify_external;
    auto* classify_cmd = app.add_subcommand("classify", "classify one URL with a saved model");
    classify_cmd->add_option("--model", classify_model, "model file")->required();
    classify_cmd->add_option("--url", classify_url, "URL to classify")->required();
    classify_cmd->add_option("--external", classify_external, "sidecar file");

    std::string sim_data, sim_dist_out, sim_ccdf_out, sim_cdf_out;
    long sim_tau = 3;
    bool sim_all = false;
    auto* sim_cmd = app.add_subcommand("analyze-similarity",
                                       "per-URL distances of similarity and their distributions");
    sim_cmd->add_option("--data", sim_data, "dataset file")->required();
    sim_cmd->add_option("--tau", sim_tau, "shared-feature threshold")->check(CLI::NonNegativeNumber);
    sim_cmd->add_flag("--all", sim_all, "use every URL, not just the malicious ones");
    sim_cmd->add_option("--out-dist", sim_dist_out, "write per-URL distances here");
    sim_cmd->add_option("--out-ccdf", sim_ccdf_out, "write the delta-min CCDF here");
    sim_cmd->add_option("--out-cdf", sim_cdf_out, "write the delta-max CDF here");

    CorpusSpec corpus_spec;
    std::string corpus_benign_out = "benign.tsv", corpus_malicious_out = "malicious.tsv";
    std::string corpus_sidecar_out, corpus_mix = "0.25,0.25,0.25,0.25";
    auto* corpus_cmd = app.add_subcommand("gen-corpus", "generate a synthetic labeled corpus");
    corpus_cmd->add_option("--seed", corpus_spec.seed, "RNG seed");
    corpus_cmd->add_option("--size", corpus_spec.size, "total URL count");
    corpus_cmd->add_option("--phish-ratio", corpus_spec.phish_ratio, "malicious fraction")
        ->check(CLI::Range(0.0, 1.0));
    corpus_cmd->add_option("--obfuscation-mix", corpus_mix,
                           "comma-separated weights of the four obfuscation families");
    corpus_cmd->add_option("--drift-phases", corpus_spec.drift_phases, "campaign drift phases");
    corpus_cmd->add_option("--out-benign", corpus_benign_out, "benign dataset output");
    corpus_cmd->add_option("--out-malicious", corpus_malicious_out, "malicious dataset output");
    corpus_cmd->add_option("--out-sidecar", corpus_sidecar_out, "synthetic sidecar output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train_cmd->parsed()) return run_train_or_evaluate(train_opt);
        if (eval_cmd->parsed()) return run_train_or_evaluate(eval_opt);
        if (extract_cmd->parsed())
            return run_extract(extract_data, extract_no_or, extract_external_path, extract_out);
        if (classify_cmd->parsed())
            return run_classify(classify_model, classify_url, classify_external);
        if (sim_cmd->parsed())
            return run_similarity(sim_data, sim_tau, sim_all, sim_dist_out, sim_ccdf_out,
                                  sim_cdf_out);
        if (corpus_cmd->parsed()) {
            std::array<double, 4> mix{};
            std::istringstream ms(corpus_mix);
            std::string part;
            for (auto& m : mix) {
                if (!std::getline(ms, part, ',')) {
                    std::cerr << "error: --obfuscation-mix needs four comma-separated weights\n";
                    return kExitUsage;
                }
                m = std::stod(part);
                if (m < 0) {
                    std::cerr << "error: obfuscation weights must be non-negative\n";
                    return kExitUsage;
                }
            }
            corpus_spec.obfuscation_mix = mix;
            return run_gen_corpus(corpus_spec, corpus_benign_out, corpus_malicious_out,
                                  corpus_sidecar_out);
        }
    } catch (const InvalidEta& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidLambda& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InitTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const StreamTooShort& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
