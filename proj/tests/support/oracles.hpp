#ifndef CHAOSTRACK_TESTS_ORACLES_HPP
#define CHAOSTRACK_TESTS_ORACLES_HPP

// Independent oracles used by the unit and acceptance suites. Everything
// here deliberately avoids the implementation paths it is used to check.

#include <array>
#include <cmath>
#include <random>

#include "chaostrack/lattice.hpp"
#include "chaostrack/lyapunov.hpp"
#include "chaostrack/rk4.hpp"
#include "chaostrack/separatrix.hpp"
#include "chaostrack/trimer.hpp"

namespace chaostrack::testing {

// -i times the central-finite-difference Wirtinger gradient of
// total_energy: dH/d conj(c_n) = (dH/du_n + i dH/dv_n) / 2.
inline Amplitudes fd_energy_gradient_rhs(const Amplitudes& c, const LatticeParams& p,
                                         double step = 1e-6) {
    Amplitudes out;
    for (int i = 0; i < 3; ++i) {
        auto cp = c;
        cp[i] = c[i] + step;
        const double hu_plus = total_energy(cp, p);
        cp[i] = c[i] - step;
        const double hu_minus = total_energy(cp, p);
        cp[i] = c[i] + Complex(0.0, step);
        const double hv_plus = total_energy(cp, p);
        cp[i] = c[i] - Complex(0.0, step);
        const double hv_minus = total_energy(cp, p);
        const double du = (hu_plus - hu_minus) / (2.0 * step);
        const double dv = (hv_plus - hv_minus) / (2.0 * step);
        out[i] = Complex(0.0, -1.0) * 0.5 * Complex(du, dv);
    }
    return out;
}

// Central finite differences of trimer_rhs in the real coordinates.
inline Jacobian6 fd_jacobian(const ModeState& state, const LatticeParams& p,
                             double step = 1e-6) {
    Jacobian6 jac{};
    const PhaseVec y0 = to_phase_vec(state);
    for (int j = 0; j < 6; ++j) {
        PhaseVec yp = y0, ym = y0;
        yp[j] += step;
        ym[j] -= step;
        const Amplitudes fp = trimer_rhs(from_phase_vec(yp), p);
        const Amplitudes fm = trimer_rhs(from_phase_vec(ym), p);
        for (int i = 0; i < 3; ++i) {
            jac[2 * i][j] = (fp[i].real() - fm[i].real()) / (2.0 * step);
            jac[2 * i + 1][j] = (fp[i].imag() - fm[i].imag()) / (2.0 * step);
        }
    }
    return jac;
}

// Two-trajectory divergence estimate of the MLE: integrates two full
// nonlinear trajectories, rescaling the offset back to d0 whenever the
// separation exceeds the rescale threshold. Times in Bloch periods.
inline double two_trajectory_mle(const ModeState& state0, const LatticeParams& p,
                                 double t_total_tb, double t_transient_tb,
                                 double dt = 0.005, double d0 = 1e-8,
                                 double rescale_at = 1e-5) {
    const double tb = p.bloch_period();
    auto rhs = [&p](const Amplitudes& c, Amplitudes& d) { trimer_rhs(c, p, d); };

    Amplitudes a = state0.c;
    const long n_transient = static_cast<long>(std::ceil(t_transient_tb * tb / dt));
    for (long s = 0; s < n_transient; ++s) rk4_step(a, dt, rhs);

    Amplitudes b = a;
    b[0] += d0;

    double log_sum = 0.0;
    const long n_steps = static_cast<long>(
        std::ceil((t_total_tb - t_transient_tb) * tb / dt));
    for (long s = 0; s < n_steps; ++s) {
        rk4_step(a, dt, rhs);
        rk4_step(b, dt, rhs);
        double sep = 0.0;
        for (int i = 0; i < 3; ++i) sep += std::norm(b[i] - a[i]);
        sep = std::sqrt(sep);
        if (sep > rescale_at) {
            log_sum += std::log(sep / d0);
            const double shrink = d0 / sep;
            for (int i = 0; i < 3; ++i) b[i] = a[i] + (b[i] - a[i]) * shrink;
        }
    }
    double sep = 0.0;
    for (int i = 0; i < 3; ++i) sep += std::norm(b[i] - a[i]);
    log_sum += std::log(std::sqrt(sep) / d0);
    return log_sum / (n_steps * dt) * tb;
}

// g at which the dimer orbit classification flips, bisected to tol_g.
// An ambiguous classification counts as the boundary itself.
inline double orbit_class_flip_g(const DimerPoint& ic, LatticeParams base, double g_lo,
                                 double g_hi, double t_total, double tol_g = 2e-4) {
    auto classify = [&](double g) -> int {
        base.g = g;
        try {
            return dimer_orbit_class(ic, base, t_total) == OrbitClass::passing ? 1 : 0;
        } catch (const SeparatrixAmbiguousError&) {
            return -1;
        }
    };
    int lo_class = classify(g_lo);
    int hi_class = classify(g_hi);
    if (lo_class < 0) return g_lo;
    if (hi_class < 0) return g_hi;
    if (lo_class == hi_class) throw NoBracketError("orbit class does not flip in range");
    while (g_hi - g_lo > tol_g) {
        const double mid = 0.5 * (g_lo + g_hi);
        const int c = classify(mid);
        if (c < 0) return mid;
        if (c == lo_class)
            g_lo = mid;
        else
            g_hi = mid;
    }
    return 0.5 * (g_lo + g_hi);
}

// Least-squares slope of y against x.
inline double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Random normalized mode state from a fixed-seed generator.
inline ModeState random_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ModeState s;
    double norm_sq = 0.0;
    for (int i = 0; i < 3; ++i) {
        s.c[i] = {u(rng), u(rng)};
        norm_sq += std::norm(s.c[i]);
    }
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : s.c) a *= inv;
    return s;
}

}  // namespace chaostrack::testing

#endif
