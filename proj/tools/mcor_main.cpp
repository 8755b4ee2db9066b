// Command-line front end: measure / test / transform / experiment.

#include "mcor/copula.hpp"
#include "mcor/csv.hpp"
#include "mcor/experiments.hpp"
#include "mcor/inference.hpp"
#include "mcor/measures.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using nlohmann::json;

namespace {

struct CommonArgs {
    std::string input;
    std::string partition;
    std::string variant = "mcor-total";
    std::string estimator = "bias-corrected";
    double alpha = 1.0;
    bool copula = false;
    bool shared_draws = false;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--input", args.input, "input CSV file (header row, numeric cells)")
        ->required();
    cmd->add_option("--partition", args.partition,
                    "column partition, e.g. \"1,2|3\" (1-based, '|' separates components)")
        ->required();
    cmd->add_option("--variant", args.variant,
                    "mcor-total|mcor-lower|mcor-upper|mcor-unnormalized|mcor-pairwise|"
                    "multivariance-normalized");
    cmd->add_option("--estimator", args.estimator, "biased|bias-corrected");
    cmd->add_option("--alpha", args.alpha, "kernel exponent in (0,2)");
    cmd->add_flag("--copula", args.copula, "apply the distributional transform first");
    cmd->add_flag("--shared-draws", args.shared_draws,
                  "share transform draws across columns (upper-bound style; does not "
                  "characterize independence)");
    cmd->add_option("--seed", args.seed, "64-bit seed (required with --copula)");
}

mcor::EstimatorKind parse_estimator(const std::string& name) {
    if (name == "biased") return mcor::EstimatorKind::biased;
    if (name == "bias-corrected") return mcor::EstimatorKind::bias_corrected;
    throw std::invalid_argument("unknown estimator: " + name + " (biased|bias-corrected)");
}

struct LoadedDataset {
    mcor::Matrix data;
    mcor::ComponentPartition partition;
};

LoadedDataset load(const CommonArgs& args) {
    const mcor::CsvTable table = mcor::ingest_csv(args.input);
    const mcor::KernelSpec kernel = mcor::KernelSpec::euclidean_power(args.alpha);
    mcor::ComponentPartition partition =
        mcor::parse_partition(args.partition, table.values.cols(), kernel);
    return LoadedDataset{table.values, std::move(partition)};
}

json config_echo(const char* command, const CommonArgs& args) {
    json j{{"command", command},       {"input", args.input},
           {"partition", args.partition}, {"variant", args.variant},
           {"estimator", args.estimator}, {"alpha", args.alpha},
           {"copula", args.copula}};
    if (args.copula) j["shared_draws"] = args.shared_draws;
    if (args.seed) j["seed"] = *args.seed;
    else j["seed"] = nullptr;
    return j;
}

void require_seed_for_copula(const CommonArgs& args) {
    if (args.copula && !args.seed)
        throw std::invalid_argument(
            "--copula requires an explicit --seed so reports stay reproducible");
}

json result_json(const mcor::MeasureResult& r) {
    json j{{"value", r.value},
           {"squared_value", r.squared_value},
           {"n_components", r.n_components},
           {"sample_size", r.sample_size}};
    if (r.statistic) j["statistic"] = *r.statistic;
    return j;
}

int run_measure(const CommonArgs& args) {
    require_seed_for_copula(args);
    const LoadedDataset ds = load(args);
    const mcor::MeasureVariant variant = mcor::parse_variant(args.variant);
    const mcor::EstimatorKind kind = parse_estimator(args.estimator);

    const mcor::MeasureResult r =
        args.copula ? mcor::cmcor(ds.data, ds.partition, kind, variant, *args.seed,
                                  args.shared_draws)
                    : mcor::compute_measure(ds.data, ds.partition, variant, kind);

    json out = config_echo("measure", args);
    out.update(result_json(r));
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_test(const CommonArgs& args, std::size_t permutations, const std::string& method) {
    require_seed_for_copula(args);
    const LoadedDataset ds = load(args);
    const mcor::MeasureVariant variant = mcor::parse_variant(args.variant);
    const mcor::EstimatorKind kind = parse_estimator(args.estimator);

    mcor::Matrix data = ds.data;
    if (args.copula)
        data = mcor::transform_dataset(data, *args.seed, args.shared_draws).values;

    mcor::TestResult result{};
    if (method == "permutation") {
        if (!args.seed)
            throw std::invalid_argument("permutation test requires an explicit --seed");
        const std::uint64_t perm_seed = mcor::stream_seed(*args.seed, 0x7465737473ull);
        result = mcor::permutation_test(data, ds.partition, variant, kind, permutations,
                                        perm_seed);
    } else if (method == "bound") {
        result = mcor::conservative_bound_test(data, ds.partition);
    } else {
        throw std::invalid_argument("unknown test method: " + method + " (permutation|bound)");
    }

    json out = config_echo("test", args);
    out["method"] = to_string(result.method);
    out["permutations"] = result.permutations;
    out["statistic"] = result.statistic;
    out["p_value"] = result.p_value;
    out["observed"] = result_json(result.observed);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_transform(const std::string& input, std::uint64_t seed, bool shared,
                  const std::string& out_path) {
    const mcor::CsvTable table = mcor::ingest_csv(input);
    const mcor::TransformedDataset t = mcor::transform_dataset(table.values, seed, shared);
    if (out_path.empty() || out_path == "-") {
        std::cout << [&] {
            std::string s;
            for (std::size_t c = 0; c < table.header.size(); ++c)
                s += (c ? "," : "") + table.header[c];
            s += '\n';
            for (std::size_t r = 0; r < t.values.rows(); ++r) {
                for (std::size_t c = 0; c < t.values.cols(); ++c)
                    s += (c ? "," : "") + mcor::format_double(t.values(r, c));
                s += '\n';
            }
            return s;
        }();
    } else {
        mcor::write_csv(out_path, table.header, t.values);
    }
    return 0;
}

std::vector<mcor::MarginalPairSpec> parse_pairs(const std::string& text) {
    std::vector<mcor::MarginalPairSpec> pairs;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string::npos) end = text.size();
        const std::string spec = text.substr(start, end - start);
        const std::size_t comma = spec.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("pair spec must look like norm,unif: " + spec);
        pairs.push_back(mcor::MarginalPairSpec{mcor::parse_marginal(spec.substr(0, comma)),
                                               mcor::parse_marginal(spec.substr(comma + 1))});
        if (end == text.size()) break;
        start = end + 1;
    }
    return pairs;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"distance multicorrelation measures, independence tests and simulation "
                 "experiments"};
    app.require_subcommand(1);

    CommonArgs measure_args;
    CLI::App* measure_cmd = app.add_subcommand("measure", "compute one dependence measure");
    add_common(measure_cmd, measure_args);

    CommonArgs test_args;
    std::size_t permutations = 999;
    std::string method = "permutation";
    CLI::App* test_cmd = app.add_subcommand("test", "independence test");
    add_common(test_cmd, test_args);
    test_cmd->add_option("--permutations", permutations, "permutation replicates (B)");
    test_cmd->add_option("--method", method, "permutation|bound");

    std::string transform_input, transform_out;
    std::optional<std::uint64_t> transform_seed;
    bool transform_shared = false;
    CLI::App* transform_cmd =
        app.add_subcommand("transform", "emit the Monte Carlo distributional transform");
    transform_cmd->add_option("--input", transform_input, "input CSV file")->required();
    transform_cmd->add_option("--seed", transform_seed, "64-bit seed")->required();
    transform_cmd->add_option("--out", transform_out, "output CSV file (default: stdout)");
    transform_cmd->add_flag("--shared-draws", transform_shared,
                            "share transform draws across columns");

    CLI::App* experiment_cmd = app.add_subcommand("experiment", "run a preset experiment");
    experiment_cmd->require_subcommand(1);
    struct ExpCli {
        CLI::App* cmd;
        mcor::ExperimentParams params;
        std::string estimator;
        std::string variant = "mcor-total";
        std::string pairs;
        std::string out_dir;
    };
    // CLI11 keeps references to the bound fields, so the structs must stay
    // at fixed addresses until parsing is done
    std::vector<ExpCli> experiments(mcor::kExperimentNames.size());
    for (std::size_t i = 0; i < mcor::kExperimentNames.size(); ++i) {
        const std::string& name = mcor::kExperimentNames[i];
        ExpCli& e = experiments[i];
        e.cmd = experiment_cmd->add_subcommand(name);
        // desk-scale defaults per experiment
        if (name == "dominance") {
            e.params.cases = 1000;
            e.params.n = 100;
            e.params.rho = 0.0;
            e.estimator = "biased";
        } else if (name == "multivariate-curves") {
            e.params.cases = 10;
            e.params.n = 100;
            e.estimator = "biased";
        } else if (name == "bias-comparison") {
            e.params.cases = 100;
            e.params.n = 100;
            e.estimator = "biased";
        } else {
            e.params.cases = 100;
            e.params.n = 1000;
            e.estimator = "bias-corrected";
        }
        e.cmd->add_option("--cases", e.params.cases, "simulated cases per setting");
        e.cmd->add_option("--n", e.params.n, "sample size per case");
        e.cmd->add_option("--rho", e.params.rho, "Gaussian copula correlation");
        e.cmd->add_option("--estimator", e.estimator, "biased|bias-corrected");
        e.cmd->add_option("--variant", e.variant, "measure variant");
        e.cmd->add_option("--seed", e.params.seed, "64-bit master seed");
        e.cmd->add_option("--out", e.out_dir, "output directory for CSV/JSON reports");
        if (name == "dominance") {
            e.cmd->add_flag("--copula", e.params.copula, "compare the copula version");
            e.cmd->add_option("--pairs", e.pairs,
                              "';'-separated marginal pairs, e.g. norm,norm;unif,unif");
        }
    }

    try {
        app.parse(argc, argv);

        if (*measure_cmd) return run_measure(measure_args);
        if (*test_cmd) return run_test(test_args, permutations, method);
        if (*transform_cmd)
            return run_transform(transform_input, *transform_seed, transform_shared,
                                 transform_out);
        for (std::size_t i = 0; i < experiments.size(); ++i) {
            ExpCli& e = experiments[i];
            if (!*e.cmd) continue;
            e.params.estimator = parse_estimator(e.estimator);
            e.params.variant = mcor::parse_variant(e.variant);
            if (!e.pairs.empty()) e.params.pairs = parse_pairs(e.pairs);
            e.params.out_dir = e.out_dir;
            const json report = mcor::run_experiment(mcor::kExperimentNames[i], e.params);
            std::cout << report.dump(2) << '\n';
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mcor::degenerate_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
