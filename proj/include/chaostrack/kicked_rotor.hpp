#ifndef CHAOSTRACK_KICKED_ROTOR_HPP
#define CHAOSTRACK_KICKED_ROTOR_HPP

#include <complex>
#include <vector>

#include "chaostrack/spectral.hpp"

namespace chaostrack {

// Classical standard map, kick-then-drift convention:
//   p' = p + K sin x,  x' = x + p'.
struct ClassicalKRState {
    double x = 0.0;
    double p = 0.0;
};

ClassicalKRState standard_map_step(const ClassicalKRState& s, double k_param);
ClassicalKRState standard_map_inverse_step(const ClassicalKRState& s, double k_param);

// p^2 after each kick, t = 0 .. n_kicks, unit sample interval.
TimeSeries classical_p2_series(double x0, double p0, double k_param, int n_kicks);

// Quantum kicked rotor on a single quasimomentum ladder p_m = kbar (m + beta),
// m = -M .. M. One period is the kick factor exp(-i (K/kbar) cos x) in the
// angle representation followed by the free factor exp(-i p^2 / (2 kbar)).
struct QKRState {
    double kbar = 2.89;
    double beta = 0.0;
    std::vector<std::complex<double>> amplitudes;  // index m + M

    int half_width() const { return (static_cast<int>(amplitudes.size()) - 1) / 2; }
    double momentum(int m) const { return kbar * (m + beta); }
    double norm_sq() const;
    double p2_expectation() const;
    double boundary_fraction() const;  // max boundary amplitude / max amplitude

    // Gaussian amplitude profile in momentum, FWHM given in momentum units,
    // centered so that the ladder passes exactly through p_center.
    static QKRState gaussian(double kbar, double p_center, double fwhm,
                             int ladder_half_width);
};

// Throws TruncationOverflowError when the boundary-amplitude invariant
// |c_{+-M}| < 1e-8 * max|c| fails after the step.
QKRState qkr_kick_then_free(const QKRState& s, double k_param);

// <p^2(t)> for t = 0 .. n_kicks from the Gaussian initial state.
TimeSeries qkr_p2_series(double k_param, double kbar, double p_center, double fwhm,
                         int n_kicks, int ladder_half_width);

}  // namespace chaostrack

#endif
