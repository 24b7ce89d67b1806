#pragma once

#include "eigenshape/eigen.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eigenshape {

enum class Seed { HalfDomain, CenteredBall, RandomBalanced, Cap };

std::string_view seed_name(Seed s);
/// Accepts "half-domain", "centered-ball", "random-balanced" and "cap".
Seed parse_seed(std::string_view name);

/// Initial set of measure c|Omega| up to one element, built as the bathtub
/// selection of a score: -x (leftmost part), minus the distance to the
/// bounding-box center, a seeded random sum of low-frequency cosines, or minus
/// the distance to the center of the orthogonal disk cap (disk meshes only).
Weight seed_weight(const Mesh& mesh, Seed seed, double kappa, double c, std::uint64_t rng_seed = 0);

enum class StopReason { SetUnchanged, LambdaTolerance, MaxIters, NoDescent };

std::string_view stop_reason_name(StopReason r);

struct IterationRecord {
    int iter = 0;
    double lambda = 0.0;
    /// Threshold that produced this set; NaN for the initial set.
    double alpha = 0.0;
    double volume = 0.0;
    /// Measure of the symmetric difference with the previous set.
    double set_change = 0.0;
    /// Relative residual of the eigensolve on this set.
    double residual = 0.0;
};

struct OptimizeOptions {
    int max_iters = 100;
    double tol = 1e-9;
};

struct OptimizeTrace {
    std::vector<IterationRecord> records;
    Weight weight;
    EigenResult result;
    StopReason stop = StopReason::MaxIters;
    /// Re-thresholding the final eigenfunction reproduces the final set.
    bool fixed_point = false;
};

/// Throws InvalidArgument unless 0 < c < 1, kappa > 0 and, under Neumann
/// conditions, c < 1/(kappa+1).
void check_admissible(const BoundaryCondition& bc, double kappa, double c);

/// Alternates the principal eigensolve with the bathtub threshold of the
/// eigenfunction at volume c|Omega|.
///
/// Stops when the selected set repeats, when lambda changes by at most
/// tol*lambda, after max_iters thresholds, or when a threshold would raise
/// lambda by more than 1e-9 relative; the rising iterate is then discarded so
/// the recorded lambdas never increase. A negative eigenfunction value below
/// -1e-8 aborts with NumericFailure.
OptimizeTrace optimize_threshold(const Discretization& disc, const BoundaryCondition& bc, double kappa, double c,
                                 const Weight& init, const OptimizeOptions& opts = {});

struct SeedSpec {
    Seed seed = Seed::HalfDomain;
    std::uint64_t rng_seed = 0;
};

struct MultiSeedResult {
    std::vector<OptimizeTrace> traces;
    /// Smallest final lambda among successful runs; ties go to the earliest seed.
    int best = 0;
    /// Empty for successful runs, else the NumericFailure message.
    std::vector<std::string> failures;
};

/// Independent optimize_threshold runs from every seed on up to `threads`
/// workers. A run that fails numerically is recorded and skipped; NumericFailure
/// is thrown only when every run fails.
MultiSeedResult optimize_multi_seed(const Discretization& disc, const BoundaryCondition& bc, double kappa, double c,
                                    const std::vector<SeedSpec>& seeds, const OptimizeOptions& opts = {},
                                    int threads = 1);

struct IntervalSweep {
    std::vector<double> a;
    std::vector<double> lambda;
    /// Indices whose value is within 1e-10 relative of the minimum.
    std::vector<int> argmin;
};

/// interval_eigen_1d on the uniform grid of n_samples points in [0, 1-c].
IntervalSweep sweep_intervals_1d(double kappa, double c, const BoundaryCondition& bc, int n_samples);

/// Measure of the symmetric difference of two element selections.
double symmetric_difference(const Mesh& mesh, const std::vector<char>& a, const std::vector<char>& b);

} // namespace eigenshape
