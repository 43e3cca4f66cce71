#ifndef CHAOSTRACK_LYAPUNOV_HPP
#define CHAOSTRACK_LYAPUNOV_HPP

#include <array>
#include <utility>
#include <vector>

#include "chaostrack/lattice.hpp"

namespace chaostrack {

// Real phase-space coordinates (Re c_-1, Im c_-1, Re c_0, Im c_0, Re c_1, Im c_1).
using PhaseVec = std::array<double, 6>;
using Jacobian6 = std::array<std::array<double, 6>, 6>;

PhaseVec to_phase_vec(const ModeState& s);
ModeState from_phase_vec(const PhaseVec& y);

// Analytic Jacobian of the trimer flow in the real coordinates; the
// linearized dynamics is  dw/dt = J w.  trace(J) = 0 for this
// divergence-free Hamiltonian flow.
Jacobian6 real_jacobian(const ModeState& state, const LatticeParams& p);

// Maximum Lyapunov exponent by tangent-space propagation. Times are given
// in Bloch periods T_B = 2 pi / omega_b; lambda is reported in units of
// 1/T_B (lambda_raw in inverse normalized time).
struct MleSettings {
    double t_total_tb = 500.0;
    double t_transient_tb = 50.0;
    double renorm_interval_tb = 1.0;
    double dt = 0.005;
    PhaseVec tangent0 = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};  // normalized before use
};

struct MleResult {
    double lambda_tb = 0.0;
    double lambda_raw = 0.0;
    std::vector<std::pair<double, double>> record;  // (time, running estimate in 1/T_B)
};

// Co-integrates the state and one tangent vector (initial tangent is the
// unit vector along Re c_-1), accumulating log stretching factors at every
// renormalization after the transient.
MleResult mle(const ModeState& state0, const LatticeParams& p, const MleSettings& s);

// Same initial condition at every g, deterministic ordering.
std::vector<std::pair<double, MleResult>> mle_sweep(const std::vector<double>& g_values,
                                                    const ModeState& state0,
                                                    LatticeParams base,
                                                    const MleSettings& s);

}  // namespace chaostrack

#endif
