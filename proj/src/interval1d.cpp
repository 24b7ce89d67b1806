#include "eigenshape/interval1d.hpp"

#include "eigenshape/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace eigenshape {

double beta_star(double kappa, double c) {
    if (!(kappa > 0.0)) throw InvalidArgument("beta_star: kappa must be positive");
    if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("beta_star: c must lie in (0,1)");
    const double sk = std::sqrt(kappa);
    if (kappa > 1.0) return 2.0 / (c * sk) * std::atan(1.0 / sk);
    if (kappa == 1.0) return std::numbers::pi / (2.0 * c);
    return 1.0 / (c * sk) * (std::atan(2.0 * sk / (kappa - 1.0)) + std::numbers::pi);
}

namespace {

using State = std::array<double, 2>; // (phi, phi')

struct Piece {
    double length;
    double m;
};

std::array<Piece, 3> pieces(double a, double c, double kappa) {
    return {Piece{a, -1.0}, Piece{c, kappa}, Piece{1.0 - a - c, -1.0}};
}

// Advances (phi, phi') across a piece of length L with constant m. Hyperbolic
// pieces are scaled by exp(-k L), which leaves signs intact and avoids overflow.
State advance(State s, double L, double m, double lambda) {
    if (L <= 0.0) return s;
    if (m < 0.0) {
        const double k = std::sqrt(-lambda * m);
        const double e = std::exp(-2.0 * k * L);
        const double ch = 0.5 * (1.0 + e);
        const double sh = 0.5 * (1.0 - e);
        if (k == 0.0) return {s[0] + L * s[1], s[1]};
        return {s[0] * ch + s[1] * sh / k, s[0] * k * sh + s[1] * ch};
    }
    const double w = std::sqrt(lambda * m);
    const double cs = std::cos(w * L), sn = std::sin(w * L);
    if (w == 0.0) return {s[0] + L * s[1], s[1]};
    return {s[0] * cs + s[1] * sn / w, -s[0] * w * sn + s[1] * cs};
}

State normalized(State s) {
    const double n = std::hypot(s[0], s[1]);
    return n > 0.0 ? State{s[0] / n, s[1] / n} : s;
}

State initial_state(const BoundaryCondition& bc) {
    if (bc.is_dirichlet()) return {0.0, 1.0};
    return normalized({1.0, bc.beta});
}

double mismatch(State end, const BoundaryCondition& bc) {
    return bc.is_dirichlet() ? end[0] : end[1] + bc.beta * end[0];
}

void check_arguments(double a, double c, double kappa) {
    if (!(kappa > 0.0)) throw InvalidArgument("interval_eigen_1d: kappa must be positive");
    if (!(c > 0.0 && c <= 1.0)) throw InvalidArgument("interval_eigen_1d: c must lie in (0,1]");
    if (!(a >= 0.0 && a <= 1.0 - c + 1e-14)) throw InvalidArgument("interval_eigen_1d: a must lie in [0, 1-c]");
}

} // namespace

double interval_mismatch_1d(double lambda, double a, double c, double kappa, const BoundaryCondition& bc) {
    State s = initial_state(bc);
    for (const auto& p : pieces(a, c, kappa)) s = normalized(advance(s, p.length, p.m, lambda));
    return mismatch(s, bc);
}

double interval_solution_1d(double x, double lambda, double a, double c, double kappa, const BoundaryCondition& bc) {
    State s = initial_state(bc);
    double left = 0.0;
    for (const auto& p : pieces(a, c, kappa)) {
        if (x <= left + p.length) return advance(s, x - left, p.m, lambda)[0];
        s = advance(s, p.length, p.m, lambda);
        left += p.length;
    }
    return s[0];
}

double interval_eigen_1d(double a, double c, double kappa, const BoundaryCondition& bc) {
    check_arguments(a, c, kappa);
    a = std::min(a, 1.0 - c);
    constexpr double step = 0.1;
    constexpr double lambda_max = 1e6;
    auto D = [&](double lam) { return interval_mismatch_1d(lam, a, c, kappa, bc); };

    double lo = 1e-6;
    double dlo = D(lo);
    double hi = lo;
    double dhi = dlo;
    bool found = false;
    for (double next = step; next <= lambda_max; next += step) {
        const double dn = D(next);
        if (dn == 0.0 || std::signbit(dn) != std::signbit(dlo)) {
            hi = next;
            dhi = dn;
            found = true;
            break;
        }
        lo = next;
        dlo = dn;
    }
    if (!found) throw NumericFailure("interval_eigen_1d: no sign change below 1e6");

    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        const double dm = D(mid);
        if (dm == 0.0) {
            lo = hi = mid;
            break;
        }
        if (std::signbit(dm) == std::signbit(dlo)) {
            lo = mid;
            dlo = dm;
        } else {
            hi = mid;
            dhi = dm;
        }
    }
    (void)dhi;
    const double lambda = 0.5 * (lo + hi);

    // The principal eigenfunction keeps one sign in the open interval.
    constexpr int samples = 400;
    for (int i = 1; i < samples; ++i) {
        const double x = static_cast<double>(i) / samples;
        if (!(interval_solution_1d(x, lambda, a, c, kappa, bc) > 0.0))
            throw NumericFailure("interval_eigen_1d: first root is not principal");
    }
    return lambda;
}

} // namespace eigenshape
