#include "eigenshape/optimize.hpp"

#include "eigenshape/errors.hpp"
#include "eigenshape/interval1d.hpp"
#include "eigenshape/parallel.hpp"
#include "eigenshape/rearrange.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace eigenshape {

std::string_view seed_name(Seed s) {
    switch (s) {
    case Seed::HalfDomain: return "half-domain";
    case Seed::CenteredBall: return "centered-ball";
    case Seed::RandomBalanced: return "random-balanced";
    case Seed::Cap: return "cap";
    }
    return "unknown";
}

Seed parse_seed(std::string_view name) {
    for (Seed s : {Seed::HalfDomain, Seed::CenteredBall, Seed::RandomBalanced, Seed::Cap})
        if (seed_name(s) == name) return s;
    throw InvalidArgument("unknown seed '" + std::string(name) + "'");
}

std::string_view stop_reason_name(StopReason r) {
    switch (r) {
    case StopReason::SetUnchanged: return "set-unchanged";
    case StopReason::LambdaTolerance: return "lambda-tolerance";
    case StopReason::MaxIters: return "max-iters";
    case StopReason::NoDescent: return "no-descent";
    }
    return "unknown";
}

Weight seed_weight(const Mesh& mesh, Seed seed, double kappa, double c, std::uint64_t rng_seed) {
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("seed_weight: c must lie in (0,1)");
    const int ne = mesh.num_elements();
    std::vector<double> score(ne);
    Point lo = mesh.vertices.front(), hi = lo;
    for (const auto& v : mesh.vertices)
        for (int k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    SetDescriptor desc = CustomSet{};
    switch (seed) {
    case Seed::HalfDomain:
        for (int e = 0; e < ne; ++e) score[e] = -mesh.centroid(e)[0];
        break;
    case Seed::CenteredBall: {
        const Point mid = {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
        for (int e = 0; e < ne; ++e) {
            const Point x = mesh.centroid(e);
            score[e] = -std::hypot(x[0] - mid[0], x[1] - mid[1]);
        }
        break;
    }
    case Seed::RandomBalanced: {
        // A few random low-frequency modes: pointwise noise would give sets
        // too fragmented for the mesh to resolve their eigenfunctions.
        std::mt19937_64 rng(rng_seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> freq(-2, 2);
        constexpr int modes = 8;
        std::array<double, modes> amp{}, phase{};
        std::array<std::array<int, 2>, modes> k{};
        for (int j = 0; j < modes; ++j) {
            amp[j] = unit(rng);
            phase[j] = 2.0 * std::numbers::pi * unit(rng);
            k[j] = {freq(rng), mesh.dim == 2 ? freq(rng) : 0};
            if (k[j][0] == 0 && k[j][1] == 0) k[j][0] = 1;
        }
        const double lx = std::max(hi[0] - lo[0], 1e-300), ly = std::max(hi[1] - lo[1], 1e-300);
        for (int e = 0; e < ne; ++e) {
            const Point x = mesh.centroid(e);
            double s = 0.0;
            for (int j = 0; j < modes; ++j)
                s += amp[j] * std::cos(2.0 * std::numbers::pi * (k[j][0] * (x[0] - lo[0]) / lx +
                                                               k[j][1] * (x[1] - lo[1]) / ly) +
                                       phase[j]);
            score[e] = s;
        }
        break;
    }
    case Seed::Cap: {
        if (mesh.dim != 2) throw InvalidArgument("seed_weight: the cap seed needs a disk mesh");
        double R = 0.0;
        for (const auto& v : mesh.vertices) R = std::max(R, std::hypot(v[0], v[1]));
        const DiskCap cap = cap_radius_from_fraction(R, c);
        for (int e = 0; e < ne; ++e) {
            const Point x = mesh.centroid(e);
            score[e] = -std::hypot(x[0] - cap.center_distance, x[1]);
        }
        desc = cap;
        break;
    }
    }
    const auto bt = bathtub_select(score, mesh.element_measure, c * mesh.total_measure());
    return bang_bang(bt.selected, kappa, desc);
}

void check_admissible(const BoundaryCondition& bc, double kappa, double c) {
    if (!(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("c must lie in (0,1)");
    if (bc.is_neumann() && !(c < 1.0 / (kappa + 1.0)))
        throw InvalidArgument("Neumann conditions need c < 1/(kappa+1) for a positive principal eigenvalue");
}

double symmetric_difference(const Mesh& mesh, const std::vector<char>& a, const std::vector<char>& b) {
    double d = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e)
        if ((a[e] != 0) != (b[e] != 0)) d += mesh.element_measure[e];
    return d;
}

namespace {

double selected_volume(const Mesh& mesh, const std::vector<char>& sel) {
    double v = 0.0;
    for (int e = 0; e < mesh.num_elements(); ++e)
        if (sel[e]) v += mesh.element_measure[e];
    return v;
}

void require_positive(const EigenResult& r, int iter) {
    if (r.positivity_margin < -1e-8)
        throw NumericFailure("optimize: eigenfunction lost positivity at iteration " + std::to_string(iter) +
                             " (min value " + std::to_string(r.positivity_margin) + ", lambda " +
                             std::to_string(r.lambda) + ")");
}

} // namespace

OptimizeTrace optimize_threshold(const Discretization& disc, const BoundaryCondition& bc, double kappa, double c,
                                 const Weight& init, const OptimizeOptions& opts) {
    check_admissible(bc, kappa, c);
    const Mesh& mesh = disc.mesh;
    init.validate(mesh);
    const double target = c * mesh.total_measure();
    double max_measure = 0.0;
    for (double m : mesh.element_measure) max_measure = std::max(max_measure, m);

    std::vector<char> current = init.indicator();
    const double v0 = selected_volume(mesh, current);
    if (std::abs(v0 - target) > max_measure * (1.0 + 1e-9))
        throw InvalidArgument("optimize: initial set volume differs from c|Omega| by more than one element");

    OptimizeTrace trace;
    trace.weight = bang_bang(current, kappa, init.descriptor);
    trace.result = principal_eigen(disc, trace.weight, bc);
    require_positive(trace.result, 0);
    trace.records.push_back(
        {0, trace.result.lambda, std::numeric_limits<double>::quiet_NaN(), v0, 0.0, trace.result.residual});

    trace.stop = StopReason::MaxIters;
    for (int k = 1; k <= opts.max_iters; ++k) {
        const auto bt = bathtub_threshold(mesh, trace.result.phi, target);
        const double change = symmetric_difference(mesh, bt.selected, current);
        if (change == 0.0) {
            trace.stop = StopReason::SetUnchanged;
            break;
        }
        Weight next = bang_bang(bt.selected, kappa);
        EigenOptions eo;
        eo.lambda_hint = trace.result.lambda;
        eo.initial = &trace.result.phi;
        EigenResult r = principal_eigen(disc, next, bc, eo);
        require_positive(r, k);
        if (r.lambda > trace.result.lambda * (1.0 + 1e-9)) {
            trace.stop = StopReason::NoDescent;
            break;
        }
        const double previous = trace.result.lambda;
        trace.records.push_back({k, r.lambda, bt.alpha, bt.volume, change, r.residual});
        current = bt.selected;
        trace.weight = std::move(next);
        trace.result = std::move(r);
        if (std::abs(previous - trace.result.lambda) <= opts.tol * trace.result.lambda) {
            trace.stop = StopReason::LambdaTolerance;
            break;
        }
    }
    trace.fixed_point = bathtub_threshold(mesh, trace.result.phi, target).selected == current;
    return trace;
}

MultiSeedResult optimize_multi_seed(const Discretization& disc, const BoundaryCondition& bc, double kappa, double c,
                                    const std::vector<SeedSpec>& seeds, const OptimizeOptions& opts, int threads) {
    if (seeds.empty()) throw InvalidArgument("optimize: no seeds given");
    check_admissible(bc, kappa, c);
    MultiSeedResult out;
    out.traces.resize(seeds.size());
    out.failures.resize(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), threads, [&](int i) {
        const Weight init = seed_weight(disc.mesh, seeds[i].seed, kappa, c, seeds[i].rng_seed);
        try {
            out.traces[i] = optimize_threshold(disc, bc, kappa, c, init, opts);
        } catch (const NumericFailure& e) {
            out.failures[i] = e.what();
        }
    });
    out.best = -1;
    for (int i = 0; i < static_cast<int>(out.traces.size()); ++i) {
        if (!out.failures[i].empty()) continue;
        if (out.best < 0 || out.traces[i].result.lambda < out.traces[out.best].result.lambda) out.best = i;
    }
    if (out.best < 0) throw NumericFailure("optimize: every seed failed; first: " + out.failures.front());
    return out;
}

IntervalSweep sweep_intervals_1d(double kappa, double c, const BoundaryCondition& bc, int n_samples) {
    if (n_samples < 3) throw InvalidArgument("sweep_intervals_1d: n_samples must be at least 3");
    IntervalSweep s;
    for (int i = 0; i < n_samples; ++i) {
        const double a = (1.0 - c) * i / (n_samples - 1);
        s.a.push_back(a);
        s.lambda.push_back(interval_eigen_1d(a, c, kappa, bc));
    }
    const double best = *std::min_element(s.lambda.begin(), s.lambda.end());
    for (int i = 0; i < n_samples; ++i)
        if (s.lambda[i] <= best * (1.0 + 1e-10)) s.argmin.push_back(i);
    return s;
}

} // namespace eigenshape
