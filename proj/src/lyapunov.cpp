#include "chaostrack/lyapunov.hpp"

#include <cmath>

#include "chaostrack/rk4.hpp"
#include "chaostrack/trimer.hpp"

namespace chaostrack {

PhaseVec to_phase_vec(const ModeState& s) {
    PhaseVec y;
    for (int i = 0; i < 3; ++i) {
        y[2 * i] = s.c[i].real();
        y[2 * i + 1] = s.c[i].imag();
    }
    return y;
}

ModeState from_phase_vec(const PhaseVec& y) {
    ModeState s;
    for (int i = 0; i < 3; ++i) s.c[i] = {y[2 * i], y[2 * i + 1]};
    return s;
}

namespace {

// Wirtinger derivatives of F_n = i dc_n/dt with respect to c_m (dA) and
// conj(c_m) (dB); expanded into the real 6x6 via
//   d f/d u = -i (dA + dB),  d f/d v = dA - dB,  f = -i F.
void jacobian_from_amplitudes(const Amplitudes& c, const LatticeParams& p,
                              Jacobian6& jac) {
    const double gx0 = p.g * p.chi00;
    const double gx1 = p.g * p.chi01;
    Complex a[3][3] = {};
    Complex b[3][3] = {};
    for (int i = 0; i < 3; ++i) {
        const double n = static_cast<double>(i - 1);
        a[i][i] = n * p.omega_b + 2.0 * gx0 * std::norm(c[i]);
        b[i][i] = gx0 * c[i] * c[i];
        for (int s = -1; s <= 1; s += 2) {
            const int j = i + s;
            if (j < 0 || j > 2) continue;
            a[i][i] += gx1 * 2.0 * (std::conj(c[i]) * c[j] + c[i] * std::conj(c[j]));
            b[i][i] += gx1 * 2.0 * c[i] * c[j];
            a[i][j] = 2.0 * gx1 * (std::norm(c[i]) + std::norm(c[j]));
            b[i][j] = gx1 * (c[i] * c[i] + c[j] * c[j]);
        }
    }
    const Complex mi(0.0, -1.0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Complex du = mi * (a[i][j] + b[i][j]);
            const Complex dv = a[i][j] - b[i][j];
            jac[2 * i][2 * j] = du.real();
            jac[2 * i][2 * j + 1] = dv.real();
            jac[2 * i + 1][2 * j] = du.imag();
            jac[2 * i + 1][2 * j + 1] = dv.imag();
        }
    }
}

}  // namespace

Jacobian6 real_jacobian(const ModeState& state, const LatticeParams& p) {
    Jacobian6 jac;
    jacobian_from_amplitudes(state.c, p, jac);
    return jac;
}

MleResult mle(const ModeState& state0, const LatticeParams& p, const MleSettings& s) {
    if (!(s.t_transient_tb < s.t_total_tb))
        throw ValidationError("t_transient_tb", "must be < t_total_tb");
    if (!(s.renorm_interval_tb > 0.0))
        throw ValidationError("renorm_interval_tb", "must be > 0");

    const double tb = p.bloch_period();
    const double t_total = s.t_total_tb * tb;
    const double t_transient = s.t_transient_tb * tb;
    const double renorm = s.renorm_interval_tb * tb;
    const int steps_per_renorm =
        std::max(1, static_cast<int>(std::ceil(renorm / s.dt - 1e-12)));
    const double h = renorm / steps_per_renorm;
    const int n_renorms = std::max(1, static_cast<int>(std::round(t_total / renorm)));
    // Transient rounded to whole renormalization intervals so the averaging
    // window is exactly (k_tr * renorm, n_renorms * renorm].
    const int k_transient =
        std::min(n_renorms - 1, static_cast<int>(std::round(t_transient / renorm)));

    // Combined 12-dim system: base trajectory followed by the tangent vector,
    // linearized with the Jacobian at the current base point.
    using Combined = std::array<double, 12>;
    auto rhs = [&p](const Combined& y, Combined& dydt) {
        Amplitudes c{Complex(y[0], y[1]), Complex(y[2], y[3]), Complex(y[4], y[5])};
        Amplitudes dc;
        trimer_rhs(c, p, dc);
        for (int i = 0; i < 3; ++i) {
            dydt[2 * i] = dc[i].real();
            dydt[2 * i + 1] = dc[i].imag();
        }
        Jacobian6 jac;
        jacobian_from_amplitudes(c, p, jac);
        for (int i = 0; i < 6; ++i) {
            double acc = 0.0;
            for (int j = 0; j < 6; ++j) acc += jac[i][j] * y[6 + j];
            dydt[6 + i] = acc;
        }
    };

    Combined y{};
    {
        const PhaseVec base = to_phase_vec(state0);
        for (int i = 0; i < 6; ++i) y[i] = base[i];
        double t_norm = 0.0;
        for (int i = 0; i < 6; ++i) t_norm += s.tangent0[i] * s.tangent0[i];
        if (!(t_norm > 0.0)) throw ValidationError("tangent0", "must be nonzero");
        t_norm = std::sqrt(t_norm);
        for (int i = 0; i < 6; ++i) y[6 + i] = s.tangent0[i] / t_norm;
    }

    MleResult result;
    double log_sum = 0.0;
    for (int k = 1; k <= n_renorms; ++k) {
        for (int i = 0; i < steps_per_renorm; ++i) rk4_step(y, h, rhs);
        const double t = k * renorm;

        double norm_sq = 0.0;
        for (int i = 6; i < 12; ++i) norm_sq += y[i] * y[i];
        const double r = std::sqrt(norm_sq);
        if (!std::isfinite(r) || r == 0.0)
            throw NonFiniteError("tangent vector degenerate at t = " + std::to_string(t));
        for (int i = 6; i < 12; ++i) y[i] /= r;

        ModeState base;
        for (int i = 0; i < 3; ++i) base.c[i] = {y[2 * i], y[2 * i + 1]};
        if (!base.finite())
            throw NonFiniteError("non-finite amplitude at t = " + std::to_string(t));
        if (std::abs(base.total_population() - 1.0) > 1e-6)
            throw NormDriftError("norm drift exceeds 1e-6 at t = " + std::to_string(t));

        if (k > k_transient) {
            log_sum += std::log(r);
            const double lam = log_sum / ((k - k_transient) * renorm) * tb;
            result.record.emplace_back(t, lam);
        }
    }
    result.lambda_raw = log_sum / ((n_renorms - k_transient) * renorm);
    result.lambda_tb = result.lambda_raw * tb;
    return result;
}

std::vector<std::pair<double, MleResult>> mle_sweep(const std::vector<double>& g_values,
                                                    const ModeState& state0,
                                                    LatticeParams base,
                                                    const MleSettings& s) {
    if (g_values.empty()) throw ValidationError("g_values", "must be nonempty");
    std::vector<std::pair<double, MleResult>> out;
    out.reserve(g_values.size());
    for (double g : g_values) {
        base.g = g;
        out.emplace_back(g, mle(state0, base, s));
    }
    return out;
}

}  // namespace chaostrack
