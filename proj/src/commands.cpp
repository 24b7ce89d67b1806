#include "eigenshape/commands.hpp"

#include "eigenshape/dynamics.hpp"
#include "eigenshape/eigen.hpp"
#include "eigenshape/errors.hpp"
#include "eigenshape/field_io.hpp"
#include "eigenshape/interval1d.hpp"
#include "eigenshape/optimize.hpp"
#include "eigenshape/parallel.hpp"
#include "eigenshape/radial.hpp"
#include "eigenshape/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

namespace eigenshape {

using nlohmann::json;
namespace fs = std::filesystem;

void Report::add(const std::string& key, double value) { add(key, format_real(value)); }
void Report::add(const std::string& key, long long value) { add(key, std::to_string(value)); }

void Report::print(std::ostream& os) const {
    for (const auto& [k, v] : entries) os << k << '=' << v << '\n';
}

namespace {

const std::vector<double> kTableFractions = {0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};

fs::path output_dir(const RunConfig& cfg) {
    fs::path p(cfg.output_dir);
    fs::create_directories(p);
    return p;
}

template <class T>
T option(const RunConfig& cfg, const std::string& key, T fallback) {
    if (!cfg.options.contains(key)) return fallback;
    try {
        return cfg.options.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgument("config: option '" + key + "' has the wrong type");
    }
}

class Csv {
public:
    Csv(const fs::path& path, const std::string& header) : out_(path, std::ios::binary) {
        if (!out_) throw Error("cannot write " + path.string());
        out_ << header << '\n';
    }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

private:
    std::ofstream out_;
};

std::string num(double v) { return std::isnan(v) ? std::string() : format_real(v); }

void write_set(const fs::path& path, const Mesh& mesh, const Weight& w, const Eigen::VectorXd* phi) {
    std::vector<Field> fields;
    if (phi) fields.push_back({"phi", FieldLocation::Vertex, std::vector<double>(phi->data(), phi->data() + phi->size())});
    fields.push_back({"m", FieldLocation::Element, w.per_element});
    write_field_file(path.string(), mesh, fields);
}

double disk_radius(const RunConfig& cfg) {
    if (cfg.domain != RunConfig::DomainKind::Disk) throw InvalidArgument("this command needs a disk domain");
    return cfg.radius;
}

// Weight described by options.set; the default is the centered set of volume c.
Weight weight_for_set(const RunConfig& cfg, const Mesh& mesh, double c) {
    const json set = cfg.options.contains("set") ? cfg.options.at("set") : json{{"type", "ball"}};
    const auto type = set.value("type", std::string("ball"));
    if (type == "all") return bang_bang(std::vector<char>(mesh.num_elements(), 1), cfg.kappa);
    if (type == "interval") {
        if (cfg.domain != RunConfig::DomainKind::Interval) throw InvalidArgument("interval sets need an interval domain");
        return weight_from_descriptor(mesh, Interval{set.value("a", 0.0), c}, cfg.kappa);
    }
    if (type == "rings") {
        RadialRings rings;
        rings.R = disk_radius(cfg);
        rings.rings = set.at("rings").get<std::vector<std::pair<double, double>>>();
        rings.validate();
        return weight_from_descriptor(mesh, rings, cfg.kappa);
    }
    if (type == "cap") return weight_from_descriptor(mesh, cap_radius_from_fraction(disk_radius(cfg), c), cfg.kappa);
    if (type == "ball") {
        switch (cfg.domain) {
        case RunConfig::DomainKind::Interval:
            return weight_from_descriptor(mesh, Interval{0.5 * (1.0 - c), c}, cfg.kappa);
        case RunConfig::DomainKind::Disk:
            return weight_from_descriptor(mesh, RadialRings{{{0.0, cfg.radius * std::sqrt(c)}}, cfg.radius},
                                          cfg.kappa);
        case RunConfig::DomainKind::Rectangle: return seed_weight(mesh, Seed::CenteredBall, cfg.kappa, c);
        }
    }
    if (type == "seed")
        return seed_weight(mesh, parse_seed(set.at("seed").get<std::string>()), cfg.kappa, c, cfg.seeds.front());
    throw InvalidArgument("config: unknown set type '" + type + "'");
}

// Default starts include the cap only where it exists (disk, c < 0.5).
std::vector<SeedSpec> seed_specs(const RunConfig& cfg, double c) {
    std::vector<std::string> names = {"half-domain", "centered-ball", "random-balanced"};
    if (cfg.domain == RunConfig::DomainKind::Disk && c < 0.5) names.push_back("cap");
    names = option(cfg, "init", names);
    std::vector<SeedSpec> out;
    for (const auto& n : names) {
        const Seed s = parse_seed(n);
        if (s == Seed::RandomBalanced)
            for (auto r : cfg.seeds) out.push_back({s, r});
        else
            out.push_back({s, 0});
    }
    if (out.empty()) throw InvalidArgument("config: options.init is empty");
    return out;
}

OptimizeOptions optimize_options(const RunConfig& cfg) {
    OptimizeOptions o;
    o.max_iters = option(cfg, "max_iters", o.max_iters);
    o.tol = option(cfg, "tol", o.tol);
    if (o.max_iters < 1 || !(o.tol >= 0.0)) throw InvalidArgument("config: max_iters must be >= 1 and tol >= 0");
    return o;
}

std::vector<double> fraction_list(const RunConfig& cfg, const std::vector<double>& fallback) {
    auto cs = option(cfg, "c_values", fallback);
    for (double c : cs)
        if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("config: c_values must lie in (0,1)");
    return cs;
}

void write_trace(const fs::path& path, const OptimizeTrace& t) {
    Csv csv(path, "iter,lambda,alpha,volume,set_change,residual");
    for (const auto& r : t.records)
        csv.row({std::to_string(r.iter), num(r.lambda), num(r.alpha), num(r.volume), num(r.set_change),
                 num(r.residual)});
}

// The selected elements of a 1D weight form one run; returns its end points.
std::pair<double, double> selected_span(const Mesh& mesh, const Weight& w) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int e = 0; e < mesh.num_elements(); ++e)
        if (w.per_element[e] > 0.0) {
            lo = std::min(lo, mesh.vertices[mesh.elements[e][0]][0]);
            hi = std::max(hi, mesh.vertices[mesh.elements[e][1]][0]);
        }
    return {lo, hi};
}

} // namespace

Report cmd_solve(const RunConfig& cfg) {
    const double c = cfg.volume_fraction();
    const auto dir = output_dir(cfg);
    const auto disc = Discretization::build(cfg.build_mesh());
    const Weight w = weight_for_set(cfg, disc.mesh, c);
    const EigenResult r = principal_eigen(disc, w, cfg.bc);

    Csv csv(dir / "solve.csv", "lambda,residual,iters,positivity_margin");
    csv.row({num(r.lambda), num(r.residual), std::to_string(r.iters), num(r.positivity_margin)});
    write_set(dir / "phi.field", disc.mesh, w, &r.phi);

    Report rep;
    rep.add("lambda", r.lambda);
    rep.add("residual", r.residual);
    rep.add("iters", r.iters);
    rep.add("positivity_margin", r.positivity_margin);
    rep.add("set_volume", w.positive_volume(disc.mesh));
    if (option(cfg, "refine", false)) {
        const auto fine = Discretization::build(cfg.build_refined_mesh());
        const double lf = principal_eigen(fine, weight_for_set(cfg, fine.mesh, c), cfg.bc).lambda;
        rep.add("lambda_refined", lf);
        rep.add("lambda_extrapolated", (4.0 * lf - r.lambda) / 3.0);
    }
    return rep;
}

Report cmd_optimize(const RunConfig& cfg) {
    const auto dir = output_dir(cfg);
    const auto disc = Discretization::build(cfg.build_mesh());
    const auto cs = fraction_list(cfg, {cfg.volume_fraction()});
    for (double c : cs) check_admissible(cfg.bc, cfg.kappa, c);
    const auto opts = optimize_options(cfg);
    const int threads = resolve_thread_count(cfg.threads);

    std::vector<MultiSeedResult> results(cs.size());
    parallel_for(static_cast<int>(cs.size()), threads, [&](int i) {
        results[i] = optimize_multi_seed(disc, cfg.bc, cfg.kappa, cs[i], seed_specs(cfg, cs[i]), opts, 1);
    });

    Report rep;
    Csv summary(dir / "optimize.csv", "c,lambda,seed,rng_seed,iters,stop,fixed_point");
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& best = results[i].traces[results[i].best];
        const SeedSpec spec = seed_specs(cfg, cs[i])[results[i].best];
        const std::string tag = format_real(cs[i]);
        write_trace(dir / ("trace_c" + tag + ".csv"), best);
        write_set(dir / ("set_c" + tag + ".field"), disc.mesh, best.weight, &best.result.phi);
        summary.row({tag, num(best.result.lambda), std::string(seed_name(spec.seed)), std::to_string(spec.rng_seed),
                     std::to_string(best.records.size() - 1), std::string(stop_reason_name(best.stop)),
                     best.fixed_point ? "1" : "0"});
        rep.add("lambda_c" + tag, best.result.lambda);
        const auto failed = std::count_if(results[i].failures.begin(), results[i].failures.end(),
                                          [](const std::string& f) { return !f.empty(); });
        if (failed > 0) rep.add("failed_seeds_c" + tag, static_cast<long long>(failed));
    }
    return rep;
}

Report cmd_table(const RunConfig& cfg) {
    const double R = disk_radius(cfg);
    if (!cfg.bc.is_neumann()) throw InvalidArgument("table: the cap table is defined for Neumann conditions");
    const auto dir = output_dir(cfg);
    const auto cs = fraction_list(cfg, kTableFractions);
    for (double c : cs) check_admissible(cfg.bc, cfg.kappa, c);
    const bool refine = option(cfg, "refine", true);
    const auto opts = optimize_options(cfg);
    const int threads = resolve_thread_count(cfg.threads);
    const auto coarse = Discretization::build(cfg.build_mesh());
    std::optional<Discretization> fine;
    if (refine) fine = Discretization::build(cfg.build_refined_mesh());

    struct Row {
        double rc = 0, lam_n = 0, lam_2n = 0, lam_ec = 0, lam_star = 0;
        int iters = 0;
    };
    std::vector<Row> rows(cs.size());
    // Each cap is the volume-matched bathtub set of the distance to the cap
    // center, so E_c and the optimized set have the same discrete volume.
    parallel_for(static_cast<int>(cs.size()), threads, [&](int i) {
        Row& row = rows[i];
        row.rc = cap_radius_from_fraction(R, cs[i]).r_c;
        const Weight cap = seed_weight(coarse.mesh, Seed::Cap, cfg.kappa, cs[i]);
        const auto trace = optimize_threshold(coarse, cfg.bc, cfg.kappa, cs[i], cap, opts);
        row.lam_n = trace.records.front().lambda;
        row.lam_star = trace.result.lambda;
        row.iters = static_cast<int>(trace.records.size()) - 1;
        row.lam_ec = row.lam_n;
        if (fine) {
            const Weight capf = seed_weight(fine->mesh, Seed::Cap, cfg.kappa, cs[i]);
            row.lam_2n = principal_eigen(*fine, capf, cfg.bc).lambda;
            row.lam_ec = (4.0 * row.lam_2n - row.lam_n) / 3.0;
        }
    });

    std::string header = "quantity";
    for (double c : cs) header += ",c=" + format_real(c);
    Csv table(dir / "table.csv", header);
    std::vector<std::string> r1 = {"r_c"}, r2 = {"lambda_Ec"}, r3 = {"lambda_Estar"};
    for (const auto& row : rows) {
        r1.push_back(num(row.rc));
        r2.push_back(num(row.lam_ec));
        r3.push_back(num(row.lam_star));
    }
    table.row(r1);
    table.row(r2);
    table.row(r3);

    Csv detail(dir / "table_detail.csv", "c,r_c,lambda_Ec_n,lambda_Ec_2n,lambda_Ec_extrapolated,lambda_Estar_n,iters");
    Report rep;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto& row = rows[i];
        detail.row({format_real(cs[i]), num(row.rc), num(row.lam_n), fine ? num(row.lam_2n) : "", num(row.lam_ec),
                    num(row.lam_star), std::to_string(row.iters)});
        rep.add("r_c_c" + format_real(cs[i]), row.rc);
        rep.add("lambda_Ec_c" + format_real(cs[i]), row.lam_ec);
        rep.add("lambda_Estar_c" + format_real(cs[i]), row.lam_star);
    }
    return rep;
}

Report cmd_oned(const RunConfig& cfg) {
    if (cfg.domain != RunConfig::DomainKind::Interval) throw InvalidArgument("oned: needs an interval domain");
    const double c = cfg.volume_fraction();
    check_admissible(cfg.bc, cfg.kappa, c);
    const auto dir = output_dir(cfg);
    const double bstar = beta_star(cfg.kappa, c);
    const int n_samples = option(cfg, "n_samples", 41);
    const auto sweep = sweep_intervals_1d(cfg.kappa, c, cfg.bc, n_samples);

    Csv csv(dir / "oned.csv", "a,lambda");
    for (std::size_t i = 0; i < sweep.a.size(); ++i) csv.row({num(sweep.a[i]), num(sweep.lambda[i])});

    const double beta = cfg.bc.is_dirichlet() ? std::numeric_limits<double>::infinity() : cfg.bc.beta;
    std::string regime = "constant";
    if (beta > bstar * (1.0 + 1e-12)) regime = "centered";
    if (beta < bstar * (1.0 - 1e-12)) regime = "boundary";

    const auto disc = Discretization::build(cfg.build_mesh());
    const auto ms = optimize_multi_seed(disc, cfg.bc, cfg.kappa, c, {{Seed::HalfDomain, 0}, {Seed::CenteredBall, 0}},
                                        optimize_options(cfg), resolve_thread_count(cfg.threads));
    const auto& best = ms.traces[ms.best];
    const auto [lo, hi] = selected_span(disc.mesh, best.weight);
    const double h = 1.0 / cfg.nx;
    bool agrees = true;
    if (regime == "centered") agrees = std::abs(lo - 0.5 * (1.0 - c)) <= h + 1e-12;
    if (regime == "boundary") agrees = std::abs(lo) <= h + 1e-12 || std::abs(hi - 1.0) <= h + 1e-12;
    write_set(dir / "set.field", disc.mesh, best.weight, &best.result.phi);

    Report rep;
    rep.add("beta_star", bstar);
    rep.add("beta", beta);
    rep.add("regime", regime);
    rep.add("sweep_argmin_a", sweep.a[sweep.argmin.front()]);
    rep.add("sweep_argmin_count", static_cast<int>(sweep.argmin.size()));
    rep.add("optimizer_lambda", best.result.lambda);
    rep.add("optimizer_left", lo);
    rep.add("optimizer_right", hi);
    rep.add("optimizer_agrees", agrees ? "1" : "0");
    return rep;
}

Report cmd_stretch(const RunConfig& cfg) {
    if (std::abs(disk_radius(cfg) - 1.0) > 1e-12) throw InvalidArgument("stretch: needs the unit disk");
    const double c = cfg.volume_fraction();
    check_admissible(cfg.bc, cfg.kappa, c);
    const auto dir = output_dir(cfg);
    RadialRings E;
    E.R = 1.0;
    if (cfg.options.contains("rings"))
        E.rings = cfg.options.at("rings").get<std::vector<std::pair<double, double>>>();
    else
        E.rings = {{0.0, std::sqrt(c)}};
    E.validate();
    if (std::abs(E.normalized_volume(2) - c) > 1e-9)
        throw InvalidArgument("stretch: the ring set volume must equal c times the disk area");

    const auto disc = Discretization::build(cfg.build_mesh());
    const Weight w = weight_from_descriptor(disc.mesh, E, cfg.kappa);
    const Weight what = stretch_weight(disc.mesh, E, cfg.kappa);
    const auto rE = principal_eigen(disc, w, cfg.bc);
    const auto rHat = principal_eigen(disc, what, cfg.bc);
    const auto rad = radial_eigen(2, E, cfg.kappa, cfg.bc, option(cfg, "radial_cells", 16 * cfg.nx));
    write_set(dir / "stretch.field", disc.mesh, what, &rHat.phi);

    Csv csv(dir / "stretch.csv", "N,c_N_num,c_N_den,c_N");
    for (int N : option(cfg, "N", std::vector<int>{2, 3, 4})) {
        const auto cn = stretch_constant(N);
        csv.row({std::to_string(N), std::to_string(cn.num), std::to_string(cn.den), num(cn.value())});
    }
    Report rep;
    rep.add("lambda_E", rE.lambda);
    rep.add("lambda_E_radial", rad.eig.lambda);
    rep.add("lambda_Ehat", rHat.lambda);
    rep.add("ratio", rHat.lambda / rE.lambda);
    rep.add("bound_c2", stretch_constant(2).value());
    rep.add("volume_E", w.positive_volume(disc.mesh));
    rep.add("volume_Ehat", what.positive_volume(disc.mesh));
    return rep;
}

Report cmd_simulate(const RunConfig& cfg) {
    const double c = cfg.volume_fraction();
    const auto dir = output_dir(cfg);
    const auto disc = Discretization::build(cfg.build_mesh());
    const Weight w = weight_for_set(cfg, disc.mesh, c);
    const auto r = principal_eigen(disc, w, cfg.bc);
    const double omega = cfg.options.contains("omega") ? option(cfg, "omega", 0.0)
                                                       : option(cfg, "omega_factor", 2.0) * r.lambda;
    const double t_end = cfg.options.contains("t_end") ? option(cfg, "t_end", 0.0)
                                                       : option(cfg, "t_end_factor", 100.0) / r.lambda;
    SimOptions so;
    so.dt = option(cfg, "dt", 0.0);
    const auto u0_kind = option(cfg, "u0", std::string("one"));
    Eigen::VectorXd u0;
    if (u0_kind == "one")
        u0 = Eigen::VectorXd::Ones(disc.mesh.num_vertices());
    else if (u0_kind == "phi")
        u0 = r.phi.cwiseMax(0.0) / r.phi.maxCoeff();
    else
        throw InvalidArgument("config: u0 must be 'one' or 'phi'");
    const auto sim = simulate_logistic(disc, cfg.bc, w, omega, u0, t_end, so);

    Csv csv(dir / "series.csv", "t,linf,mass");
    for (const auto& s : sim.series) csv.row({num(s.t), num(s.linf), num(s.mass)});
    write_field_file((dir / "u.field").string(), disc.mesh,
                     {{"u", FieldLocation::Vertex,
                       std::vector<double>(sim.state.u.data(), sim.state.u.data() + sim.state.u.size())}});

    Report rep;
    rep.add("lambda", r.lambda);
    rep.add("omega", omega);
    rep.add("t_end", t_end);
    rep.add("dt", sim.state.dt);
    rep.add("steps", sim.steps);
    rep.add("clipped", static_cast<long long>(sim.clipped));
    rep.add("mass_ratio", sim.series.back().mass / sim.series.front().mass);
    rep.add("final_mass", sim.series.back().mass);
    return rep;
}

Report cmd_equiv(const RunConfig& cfg) {
    const double c = cfg.volume_fraction();
    check_admissible(cfg.bc, cfg.kappa, c);
    const auto dir = output_dir(cfg);
    const auto disc = Discretization::build(cfg.build_mesh());
    const auto ms = optimize_multi_seed(disc, cfg.bc, cfg.kappa, c, seed_specs(cfg, c), optimize_options(cfg),
                                        resolve_thread_count(cfg.threads));
    const auto& best = ms.traces[ms.best];
    const double lam = best.result.lambda;
    const double mu_minus = option(cfg, "mu_minus", -lam);
    const double mu_plus = option(cfg, "mu_plus", cfg.kappa * lam);
    if (!(mu_minus < 0.0 && mu_plus > 0.0))
        throw InvalidArgument("equiv: growth bounds need mu_minus < 0 < mu_plus");
    std::vector<double> mu(best.weight.per_element.size());
    for (std::size_t e = 0; e < mu.size(); ++e) mu[e] = best.weight.per_element[e] > 0.0 ? mu_plus : mu_minus;
    const double gamma = gamma_eigen(disc, mu, cfg.bc);
    const double expected = -mu_minus - lam;

    Csv csv(dir / "equiv.csv", "lambda_star,mu_minus,mu_plus,gamma,expected,relative_gap");
    csv.row({num(lam), num(mu_minus), num(mu_plus), num(gamma), num(expected), num(std::abs(gamma - expected) / lam)});
    Report rep;
    rep.add("lambda_star", lam);
    rep.add("gamma", gamma);
    rep.add("expected", expected);
    rep.add("relative_gap", std::abs(gamma - expected) / lam);
    return rep;
}

Report run_command(const std::string& name, const RunConfig& cfg) {
    if (name == "solve") return cmd_solve(cfg);
    if (name == "optimize") return cmd_optimize(cfg);
    if (name == "table") return cmd_table(cfg);
    if (name == "oned") return cmd_oned(cfg);
    if (name == "stretch") return cmd_stretch(cfg);
    if (name == "simulate") return cmd_simulate(cfg);
    if (name == "equiv") return cmd_equiv(cfg);
    throw InvalidArgument("unknown command '" + name + "'");
}

} // namespace eigenshape
