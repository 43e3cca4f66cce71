#include "chaostrack/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chaostrack/rk4.hpp"

namespace chaostrack {

namespace {

constexpr double kPi = std::numbers::pi;

double well_product(double i1) { return std::sqrt(i1 * (1.0 - i1)); }

struct Hessian2 {
    double dii, dip, dpp;
    double det() const { return dii * dpp - dip * dip; }
};

Hessian2 dimer_hessian(const DimerPoint& pt, const LatticeParams& p) {
    const double f = well_product(pt.i1);
    const double gx1 = p.g * p.chi01;
    Hessian2 h;
    h.dii = 2.0 * p.g * p.chi00 - gx1 * std::cos(pt.phi) / (2.0 * f * f * f);
    h.dip = -gx1 * std::sin(pt.phi) * (1.0 - 2.0 * pt.i1) / f;
    h.dpp = -2.0 * gx1 * f * std::cos(pt.phi);
    return h;
}

}  // namespace

double dimer_energy(const DimerPoint& pt, const LatticeParams& p) {
    const double i1 = pt.i1, i0 = 1.0 - pt.i1;
    return p.omega_b * i1 + 0.5 * p.g * p.chi00 * (i0 * i0 + i1 * i1) +
           2.0 * p.g * p.chi01 * well_product(i1) * std::cos(pt.phi);
}

std::array<double, 2> dimer_energy_gradient(const DimerPoint& pt,
                                            const LatticeParams& p) {
    const double f = well_product(pt.i1);
    const double gx1 = p.g * p.chi01;
    return {
        p.omega_b + p.g * p.chi00 * (2.0 * pt.i1 - 1.0) +
            gx1 * std::cos(pt.phi) * (1.0 - 2.0 * pt.i1) / f,
        -2.0 * gx1 * f * std::sin(pt.phi),
    };
}

double initial_energy_e0(const DimerPoint& ic, const LatticeParams& p) {
    return dimer_energy(ic, p);
}

namespace {

constexpr int kScanGrid = 400;
constexpr double kGradTol = 1e-11;
constexpr double kDedupTol = 1e-6;
constexpr double kBoundary = 1e-12;

// Damped Newton iteration on the gradient from a grid seed. Returns true
// when it lands on a stationary point inside the open cylinder.
bool refine_fixed_point(const LatticeParams& p, DimerPoint& pt) {
    auto grad_norm = [&](const DimerPoint& q) {
        const auto g = dimer_energy_gradient(q, p);
        return std::hypot(g[0], g[1]);
    };
    double best = grad_norm(pt);
    for (int it = 0; it < 200 && best > kGradTol; ++it) {
        const auto g = dimer_energy_gradient(pt, p);
        const Hessian2 h = dimer_hessian(pt, p);
        const double det = h.det();
        double di, dp;
        if (std::abs(det) > 1e-300) {
            di = -(h.dpp * g[0] - h.dip * g[1]) / det;
            dp = -(-h.dip * g[0] + h.dii * g[1]) / det;
        } else {
            di = -g[0] * 1e-3;
            dp = -g[1] * 1e-3;
        }
        double step = 1.0;
        bool improved = false;
        for (int k = 0; k < 40; ++k, step *= 0.5) {
            DimerPoint trial{pt.i1 + step * di, pt.phi + step * dp};
            trial.i1 = std::clamp(trial.i1, kBoundary, 1.0 - kBoundary);
            if (trial.phi > kPi) trial.phi -= 2.0 * kPi;
            if (trial.phi <= -kPi) trial.phi += 2.0 * kPi;
            const double gn = grad_norm(trial);
            if (gn < best) {
                pt = trial;
                best = gn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    return best <= kGradTol && pt.i1 > kBoundary && pt.i1 < 1.0 - kBoundary;
}

}  // namespace

std::vector<FixedPointInfo> dimer_fixed_points(const LatticeParams& p) {
    if (p.chi01 == 0.0)
        throw DegeneratePhaseError(
            "chi01 = 0: dimer energy is phase-independent, fixed points degenerate");
    if (!(p.g > 0.0))
        throw DegeneratePhaseError("g = 0: dimer energy is phase-independent");

    // Grid values of |grad E|^2; local minima (with phi wrap-around) seed
    // the Newton refinement.
    std::vector<double> gn2(kScanGrid * kScanGrid);
    auto at = [&](int ii, int jj) -> double& {
        return gn2[ii * kScanGrid + ((jj % kScanGrid) + kScanGrid) % kScanGrid];
    };
    std::vector<DimerPoint> grid(kScanGrid * kScanGrid);
    for (int i = 0; i < kScanGrid; ++i) {
        const double i1 = (i + 0.5) / kScanGrid;
        for (int j = 0; j < kScanGrid; ++j) {
            const double phi = -kPi + 2.0 * kPi * (j + 1.0) / kScanGrid;
            const DimerPoint q{i1, phi};
            const auto g = dimer_energy_gradient(q, p);
            grid[i * kScanGrid + j] = q;
            at(i, j) = g[0] * g[0] + g[1] * g[1];
        }
    }

    std::vector<FixedPointInfo> found;
    for (int i = 0; i < kScanGrid; ++i) {
        for (int j = 0; j < kScanGrid; ++j) {
            const double v = at(i, j);
            if (i > 0 && at(i - 1, j) < v) continue;
            if (i + 1 < kScanGrid && at(i + 1, j) < v) continue;
            if (at(i, j - 1) < v || at(i, j + 1) < v) continue;
            DimerPoint pt = grid[i * kScanGrid + j];
            if (!refine_fixed_point(p, pt)) continue;
            bool duplicate = false;
            for (const auto& fp : found) {
                double dphi = std::remainder(fp.point.phi - pt.phi, 2.0 * kPi);
                if (std::abs(fp.point.i1 - pt.i1) < kDedupTol &&
                    std::abs(dphi) < kDedupTol) {
                    duplicate = true;
                    break;
                }
            }
            if (duplicate) continue;
            const Hessian2 h = dimer_hessian(pt, p);
            found.push_back(FixedPointInfo{
                pt, dimer_energy(pt, p),
                h.det() < 0.0 ? FixedPointKind::saddle : FixedPointKind::center});
        }
    }
    if (found.empty()) throw NoFixedPointsError("no stationary points located");
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        return a.energy < b.energy;
    });
    return found;
}

double separatrix_energy(const LatticeParams& p) {
    for (const auto& fp : dimer_fixed_points(p))
        if (fp.kind == FixedPointKind::saddle) return fp.energy;  // sorted by energy
    throw NoSaddleError("no saddle point exists for these parameters");
}

double separatrix_energy_near(const LatticeParams& p, double e_ref) {
    double best = std::numeric_limits<double>::quiet_NaN();
    double dist = std::numeric_limits<double>::infinity();
    for (const auto& fp : dimer_fixed_points(p)) {
        if (fp.kind != FixedPointKind::saddle) continue;
        const double d = std::abs(fp.energy - e_ref);
        if (d < dist) {
            dist = d;
            best = fp.energy;
        }
    }
    if (!std::isfinite(best))
        throw NoSaddleError("no saddle point exists for these parameters");
    return best;
}

CriticalGResult critical_g(const DimerPoint& ic, LatticeParams base, double g_min,
                           double g_max, int n_scan) {
    if (!(g_min > 0.0 && g_max > g_min))
        throw ValidationError("g_range", "need 0 < g_min < g_max");
    if (n_scan < 50) throw ValidationError("n_scan", "must be >= 50");

    auto mismatch = [&](double g) {
        base.g = g;
        const double e0 = initial_energy_e0(ic, base);
        return e0 - separatrix_energy_near(base, e0);
    };

    bool any_saddle = false;
    double prev_g = 0.0, prev_f = 0.0;
    bool have_prev = false;
    for (int i = 0; i < n_scan; ++i) {
        const double g = g_min + (g_max - g_min) * i / (n_scan - 1);
        double f;
        try {
            f = mismatch(g);
        } catch (const NoSaddleError&) {
            have_prev = false;
            continue;
        } catch (const DegeneratePhaseError&) {
            have_prev = false;
            continue;
        }
        any_saddle = true;
        if (have_prev && (prev_f <= 0.0) != (f <= 0.0)) {
            double lo = prev_g, hi = g, flo = prev_f;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = mismatch(mid);
                if ((fm <= 0.0) == (flo <= 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double g_star = 0.5 * (lo + hi);
            base.g = g_star;
            return CriticalGResult{g_star, initial_energy_e0(ic, base), lo, hi};
        }
        prev_g = g;
        prev_f = f;
        have_prev = true;
    }
    if (!any_saddle) throw NoSaddleError("no saddle anywhere in the g range");
    throw NoBracketError("E0 - Es does not change sign on the scanned g range");
}

std::array<Complex, 2> dimer_rhs(const std::array<Complex, 2>& c,
                                 const LatticeParams& p) {
    const double gx0 = p.g * p.chi00;
    const double gx1 = p.g * p.chi01;
    const Complex c0 = c[0], c1 = c[1];
    const double i0 = std::norm(c0), i1 = std::norm(c1);
    const Complex f0 = gx0 * i0 * c0 +
                       gx1 * (2.0 * i0 * c1 + c0 * c0 * std::conj(c1) + i1 * c1);
    const Complex f1 = p.omega_b * c1 + gx0 * i1 * c1 +
                       gx1 * (2.0 * i1 * c0 + c1 * c1 * std::conj(c0) + i0 * c0);
    return {Complex(0.0, -1.0) * f0, Complex(0.0, -1.0) * f1};
}

namespace {

OrbitClass classify_single(const DimerPoint& ic, const LatticeParams& p,
                           double t_total) {
    std::array<Complex, 2> c{std::sqrt(1.0 - ic.i1),
                             std::sqrt(ic.i1) * Complex(std::cos(ic.phi),
                                                        -std::sin(ic.phi))};
    auto rhs = [&p](const std::array<Complex, 2>& y, std::array<Complex, 2>& d) {
        d = dimer_rhs(y, p);
    };
    const double dt = 0.005;
    const int sample_every = 20;  // phase advances well under pi between samples
    const long n_steps = static_cast<long>(std::ceil(t_total / dt));

    auto rel_phase = [&]() { return std::arg(c[0] * std::conj(c[1])); };
    double prev = rel_phase();
    double unwrapped = 0.0, lo = 0.0, hi = 0.0;
    for (long s = 1; s <= n_steps; ++s) {
        rk4_step(c, dt, rhs);
        if (s % sample_every != 0 && s != n_steps) continue;
        const double cur = rel_phase();
        double d = cur - prev;
        if (d > kPi) d -= 2.0 * kPi;
        if (d <= -kPi) d += 2.0 * kPi;
        unwrapped += d;
        lo = std::min(lo, unwrapped);
        hi = std::max(hi, unwrapped);
        prev = cur;
    }
    return std::abs(unwrapped) > 2.0 * kPi ? OrbitClass::passing : OrbitClass::bound;
}

}  // namespace

OrbitClass dimer_orbit_class(const DimerPoint& ic, const LatticeParams& p,
                             double t_total) {
    if (!(ic.i1 > 0.0 && ic.i1 < 1.0))
        throw ValidationError("i1", "must be strictly inside (0, 1)");
    const OrbitClass base = classify_single(ic, p, t_total);
    for (double d : {-1e-6, 1e-6}) {
        DimerPoint q{std::clamp(ic.i1 + d, 1e-9, 1.0 - 1e-9), ic.phi};
        if (classify_single(q, p, t_total) != base)
            throw SeparatrixAmbiguousError(
                "classification flips under a 1e-6 population perturbation");
    }
    return base;
}

}  // namespace chaostrack
