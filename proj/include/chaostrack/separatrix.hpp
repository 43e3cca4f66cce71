#ifndef CHAOSTRACK_SEPARATRIX_HPP
#define CHAOSTRACK_SEPARATRIX_HPP

#include <array>
#include <vector>

#include "chaostrack/lattice.hpp"

namespace chaostrack {

// Two-well reduction: canonical pair (I_1, phi = theta_1 - theta_0) with
// I_0 = 1 - I_1 and well -1 empty.
struct DimerPoint {
    double i1;
    double phi;
};

// E(I_1, phi) = w_B I_1 + (g chi00/2) ((1-I_1)^2 + I_1^2)
//             + 2 g chi01 sqrt(I_1 (1-I_1)) cos phi.
double dimer_energy(const DimerPoint& pt, const LatticeParams& p);

// Gradient (dE/dI_1, dE/dphi); diverges at the population boundaries.
std::array<double, 2> dimer_energy_gradient(const DimerPoint& pt, const LatticeParams& p);

enum class FixedPointKind { center, saddle };

struct FixedPointInfo {
    DimerPoint point;
    double energy;
    FixedPointKind kind;
};

// All stationary points of the dimer energy on the open cylinder
// (0,1) x (-pi, pi], located by a dense grid scan refined by damped Newton
// iteration and classified by the Hessian determinant (negative = saddle).
// Throws DegeneratePhaseError when chi01 = 0 and NoFixedPointsError when
// the scan comes up empty.
std::vector<FixedPointInfo> dimer_fixed_points(const LatticeParams& p);

// Energy of the minimum-energy saddle. Throws NoSaddleError.
double separatrix_energy(const LatticeParams& p);

// Energy of the saddle closest in energy to e_ref (used by critical_g,
// which passes the trajectory energy E_0).
double separatrix_energy_near(const LatticeParams& p, double e_ref);

// Trajectory energy E_0 of an initial condition with well -1 empty;
// an alias of dimer_energy kept for symmetry with the separatrix energy.
double initial_energy_e0(const DimerPoint& ic, const LatticeParams& p);

struct CriticalGResult {
    double g_star;
    double e0_at_g_star;
    double bracket_lo;
    double bracket_hi;
};

// Scans f(g) = E_0(g) - E_s(g) on a uniform grid over [g_min, g_max] and
// bisects the first sign change. Throws NoBracketError when f never changes
// sign and NoSaddleError when no scan point has a saddle.
CriticalGResult critical_g(const DimerPoint& ic, LatticeParams base, double g_min,
                           double g_max, int n_scan);

enum class OrbitClass { bound, passing };

// Right-hand side of the dimer flow in Cartesian amplitudes (c_0, c_1):
// the trimer equations restricted to wells {0, 1} with the coupling into
// well -1 dropped.
std::array<Complex, 2> dimer_rhs(const std::array<Complex, 2>& c,
                                 const LatticeParams& p);

// Integrates the dimer flow and classifies the orbit by the winding of the
// unwrapped relative phase: passing when the net winding exceeds 2 pi.
// Throws SeparatrixAmbiguousError when a 1e-6 perturbation of the initial
// population flips the label.
OrbitClass dimer_orbit_class(const DimerPoint& ic, const LatticeParams& p,
                             double t_total);

}  // namespace chaostrack

#endif
