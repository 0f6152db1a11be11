#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdent/distributions.hpp"
#include "qdent/kernel_qdf.hpp"
#include "qdent/parzen.hpp"
#include "qdent/sample.hpp"
#include "qdent/spacing_estimators.hpp"

namespace qdent {

// One estimator plus its tuning, the unit a Monte-Carlo plan sweeps.
struct EstimatorSpec {
    EstimatorId id = EstimatorId::Vasicek;
    SpacingConfig spacing{};
    KernelConfig kernel{};
    LocationScaleNull null_model{};

    std::string label() const { return to_string(id); }

    // "vasicek m=4", "kernel h=0.0333 eps=0.01", "parzen-star h=0.1 null=normal"
    static EstimatorSpec parse(const std::string& text);
};

double apply_estimator(const EstimatorSpec& spec, const Sample& x);

struct ExperimentPlan {
    Distribution dist = Distribution::normal(0.0, 1.0);
    std::optional<Distribution> contaminant;
    double contamination = 0.0;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::vector<EstimatorSpec> estimators;
    std::uint64_t seed = 0;
    unsigned threads = 0;

    void validate() const; // throws std::invalid_argument

    // Plan-file form: '#' comments plus key=value lines (dist, contaminant,
    // contamination, n, reps, seed) and one "estimator = ..." line per spec.
    static ExperimentPlan parse(std::istream& in);
};

struct McReport {
    std::string estimator;
    double mean = 0.0;
    double bias = 0.0;
    double variance = 0.0;
    double mse = 0.0;
    std::size_t failures = 0; // errored replications, excluded from the moments
};

// Paired design: every estimator sees the same sample in each replication r,
// drawn from stream (seed, r). Moments use the divide-by-R population
// formulas, so mse = variance + bias^2 holds to machine precision. The bias
// reference is dist.true_entropy() -- for contaminated plans that is the
// clean base law. Deterministic in the plan, whatever the thread count.
std::vector<McReport> run_experiment(const ExperimentPlan& plan);

// Same engine; requires plan.contaminant to be set.
std::vector<McReport> run_contamination(const ExperimentPlan& plan);

enum class TableFormat { Csv, Json, Text };

// Renders reports with 8 significant digits, preceded by the metadata
// needed to rerun the experiment bit-identically.
std::string assemble_table(const std::vector<McReport>& reports, TableFormat format,
                           const std::map<std::string, std::string>& meta);

std::vector<McReport> parse_csv_table(std::istream& in); // round-trip of the Csv format

} // namespace qdent
