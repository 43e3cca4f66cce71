#ifndef CHAOSTRACK_TRIMER_HPP
#define CHAOSTRACK_TRIMER_HPP

#include <array>
#include <optional>

#include "chaostrack/lattice.hpp"

namespace chaostrack {

using Amplitudes = std::array<Complex, 3>;

// Right-hand side of the three-well reduction,
//   i dc_n/dt = n w_B c_n + g chi00 |c_n|^2 c_n
//             + g chi01 sum_{s=+-1} ( 2|c_n|^2 c_{n+s} + c_n^2 conj(c_{n+s})
//                                     + |c_{n+s}|^2 c_{n+s} ),
// with c_{-2} = c_{+2} = 0. Equals -i times the gradient of total_energy
// with respect to conj(c_n).
inline void trimer_rhs(const Amplitudes& c, const LatticeParams& p, Amplitudes& dcdt) {
    const double gx0 = p.g * p.chi00;
    const double gx1 = p.g * p.chi01;
    for (int i = 0; i < 3; ++i) {
        const double n = static_cast<double>(i - 1);
        const Complex cn = c[i];
        const double in = std::norm(cn);
        Complex f = (n * p.omega_b + gx0 * in) * cn;
        for (int s = -1; s <= 1; s += 2) {
            const int j = i + s;
            if (j < 0 || j > 2) continue;
            const Complex cm = c[j];
            f += gx1 * (2.0 * in * cm + cn * cn * std::conj(cm) + std::norm(cm) * cm);
        }
        dcdt[i] = Complex(0.0, -1.0) * f;
    }
}

inline Amplitudes trimer_rhs(const ModeState& state, const LatticeParams& p) {
    Amplitudes d;
    trimer_rhs(state.c, p, d);
    return d;
}

// Conserved energy of the trimer flow,
//   H = sum_n n w_B I_n + (g chi00/2) sum_n I_n^2
//     + 2 g chi01 sum_n sum_{s=+-1} I_n Re[ conj(c_n) c_{n+s} ].
// Defined for arbitrary (not necessarily normalized) amplitudes so that
// finite-difference gradients off the norm sphere are meaningful.
inline double total_energy(const Amplitudes& c, const LatticeParams& p) {
    double h = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double n = static_cast<double>(i - 1);
        const double in = std::norm(c[i]);
        h += n * p.omega_b * in + 0.5 * p.g * p.chi00 * in * in;
        for (int s = -1; s <= 1; s += 2) {
            const int j = i + s;
            if (j < 0 || j > 2) continue;
            h += 2.0 * p.g * p.chi01 * in * (std::conj(c[i]) * c[j]).real();
        }
    }
    return h;
}

inline double total_energy(const ModeState& state, const LatticeParams& p) {
    return total_energy(state.c, p);
}

// Condensate mean position in lattice-step units,
//   <x> = sum_n n I_n + 2 x1 sum_n Re[ conj(c_{n+1}) c_n ]
//       + 2 x2 sum_n Re[ conj(c_{n+2}) c_n ].
// Invariant under a global phase rotation of all amplitudes.
inline double mean_position(const ModeState& state, const LatticeParams& p) {
    const auto& c = state.c;
    double x = -std::norm(c[0]) + std::norm(c[2]);
    x += 2.0 * p.x1 * ((std::conj(c[1]) * c[0]).real() + (std::conj(c[2]) * c[1]).real());
    x += 2.0 * p.x2 * (std::conj(c[2]) * c[0]).real();
    return x;
}

// Fixed-step integration of trimer_rhs. dt is reduced to the nearest
// divisor of dt_sample so that samples land exactly on t0 + k*dt_sample.
// Throws NormDriftError if |sum I_n - 1| > 1e-6 at any sample and
// NonFiniteError on NaN/Inf amplitudes.
Trajectory integrate(const ModeState& state0, const LatticeParams& p,
                     double t_end, double dt, double dt_sample);

// First-order Bohr frequencies w_nm = (n-m) w_B + g chi00 (I_n - I_m)
// for the three pairs (1,0), (0,-1), (1,-1).
struct BohrFrequencies {
    double w10;
    double w0m1;
    double w1m1;
};

// populations indexed as (I_-1, I_0, I_+1).
BohrFrequencies bohr_frequencies(const std::array<double, 3>& populations,
                                 const LatticeParams& p);

// Combination frequency Omega_pqr = p w0m1 + q w10 + r w1m1.
double combination_frequency(int p, int q, int r, const BohrFrequencies& bohr);

// Nonlinearity g* > 0 at which Omega_pqr vanishes to first order:
//   g* = -(p + q + 2r) w_B / ( chi00 [ p(I_0 - I_-1) + q(I_1 - I_0) + r(I_1 - I_-1) ] ).
// Returns nullopt when the resonance sits at g* <= 0 (unphysical);
// throws DegenerateCombinationError when the combination is g-independent.
std::optional<double> first_order_resonance_g(int p, int q, int r,
                                              const std::array<double, 3>& populations,
                                              const LatticeParams& p_lattice);

}  // namespace chaostrack

#endif
