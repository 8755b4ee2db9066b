#pragma once

#include "mcor/centering.hpp"
#include "mcor/inference.hpp"
#include "mcor/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mcor {

// Named preset experiments behind the `experiment` CLI subcommand. Each
// driver returns a JSON report (config echo plus aggregated values) and,
// when out_dir is non-empty, writes <name>.csv and <name>.json there.
// Output files are byte-stable for a fixed config and seed.
struct ExperimentParams {
    std::size_t cases = 100;
    std::size_t n = 1000;
    double rho = 0.8;
    EstimatorKind estimator = EstimatorKind::bias_corrected;
    MeasureVariant variant = MeasureVariant::mcor_total;
    bool copula = false; // dominance: compare the copula version instead
    std::vector<MarginalPairSpec> pairs; // dominance; empty = default set
    std::uint64_t seed = 1;
    std::filesystem::path out_dir; // empty = no files
};

extern const std::vector<std::string> kExperimentNames;

// Mean measure per marginal pair on a shared Gaussian copula.
nlohmann::json run_marginal_table(const ExperimentParams& params);
// Copula-measure analogue of the marginal table.
nlohmann::json run_copula_marginal_table(const ExperimentParams& params);
// Mean measure for the (2,1)-component setting over s in {0, 0.5, 1}.
nlohmann::json run_within_margin_table(const ExperimentParams& params);
// Measure curves over an s-grid for the three multivariate scenarios.
nlohmann::json run_multivariate_curves(const ExperimentParams& params);
// Per-case biased vs bias-corrected values across sample sizes.
nlohmann::json run_bias_comparison(const ExperimentParams& params);
// Dominance counts with exact binomial tests and Holm adjustment.
nlohmann::json run_dominance(const ExperimentParams& params);

// Dispatch by CLI name: dominance, example-4.2, example-4.3, example-5.4,
// multivariate-curves, bias-comparison.
nlohmann::json run_experiment(const std::string& name, const ExperimentParams& params);

nlohmann::json dominance_report_json(const DominanceReport& report);

} // namespace mcor
