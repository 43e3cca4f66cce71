#include "chaostrack/trimer.hpp"

#include <cmath>

#include "chaostrack/rk4.hpp"

namespace chaostrack {

Trajectory integrate(const ModeState& state0, const LatticeParams& p,
                     double t_end, double dt, double dt_sample) {
    if (!(dt > 0.0)) throw ValidationError("dt", "must be > 0");
    if (!(dt_sample >= dt)) throw ValidationError("dt_sample", "must be >= dt");

    const int steps_per_sample =
        std::max(1, static_cast<int>(std::ceil(dt_sample / dt - 1e-12)));
    const double h = dt_sample / steps_per_sample;
    const std::size_t n_samples =
        static_cast<std::size_t>(std::floor(t_end / dt_sample + 1e-9)) + 1;

    Trajectory traj;
    traj.t0 = 0.0;
    traj.dt_sample = dt_sample;
    traj.states.reserve(n_samples);

    auto rhs = [&p](const Amplitudes& c, Amplitudes& d) { trimer_rhs(c, p, d); };

    ModeState s = state0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        if (!s.finite())
            throw NonFiniteError("non-finite amplitude at t = " +
                                 std::to_string(traj.time(k)));
        if (std::abs(s.total_population() - 1.0) > 1e-6)
            throw NormDriftError("norm drift exceeds 1e-6 at t = " +
                                 std::to_string(traj.time(k)));
        traj.states.push_back(s);
        if (k + 1 == n_samples) break;
        for (int i = 0; i < steps_per_sample; ++i) rk4_step(s.c, h, rhs);
    }
    return traj;
}

BohrFrequencies bohr_frequencies(const std::array<double, 3>& populations,
                                 const LatticeParams& p) {
    const double gx = p.g * p.chi00;
    const double im1 = populations[0], i0 = populations[1], i1 = populations[2];
    return BohrFrequencies{
        p.omega_b + gx * (i1 - i0),
        p.omega_b + gx * (i0 - im1),
        2.0 * p.omega_b + gx * (i1 - im1),
    };
}

double combination_frequency(int p, int q, int r, const BohrFrequencies& bohr) {
    return p * bohr.w0m1 + q * bohr.w10 + r * bohr.w1m1;
}

std::optional<double> first_order_resonance_g(int p, int q, int r,
                                              const std::array<double, 3>& populations,
                                              const LatticeParams& p_lattice) {
    const double im1 = populations[0], i0 = populations[1], i1 = populations[2];
    const double slope =
        p_lattice.chi00 * (p * (i0 - im1) + q * (i1 - i0) + r * (i1 - im1));
    if (slope == 0.0)
        throw DegenerateCombinationError(
            "combination frequency independent of g for (p,q,r) = (" +
            std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")");
    const double g_star = -(p + q + 2 * r) * p_lattice.omega_b / slope;
    if (g_star > 0.0) return g_star;
    return std::nullopt;
}

}  // namespace chaostrack
