#ifndef CHAOSTRACK_WANNIER_HPP
#define CHAOSTRACK_WANNIER_HPP

#include <vector>

#include "chaostrack/errors.hpp"

namespace chaostrack {

// Lowest Bloch band of H = P^2/(2m) - v0 cos(2 pi x), m = pi^2/2, with the
// well of the unit cell centered at x = 0. Plane-wave coefficients are real
// with the sign fixed so that psi_kappa(0) > 0.
struct BlochBand {
    std::vector<double> kappa;               // midpoint grid in (-pi, pi)
    std::vector<double> energy;              // lowest band, recoil units
    std::vector<std::vector<double>> coeff;  // one coefficient vector per kappa
    int n_basis = 0;
    bool basis_converged = true;  // doubling n_basis moved no energy by > 1e-8
    double basis_delta = 0.0;     // the largest such move
};

// Dense plane-wave diagonalization of the lowest band. n_basis must be odd
// and >= 11, n_k >= 16.
BlochBand bloch_spectrum(double v0, int n_basis, int n_k);

// Lowest-band energy at a single quasimomentum (not restricted to the grid).
double band_energy_at(double v0, double kappa, int n_basis);

// E_1(pi) - E_0(pi): the band gap at the zone edge.
double zone_edge_gap(double v0, int n_basis);

// Real, even, normalized lowest-band Wannier function sampled on a uniform
// grid symmetric around 0, spanning n_k lattice steps.
struct WannierFunction {
    std::vector<double> x;
    std::vector<double> phi;
    double dx = 0.0;
    int points_per_step = 0;
};

WannierFunction wannier_ground(double v0);
WannierFunction wannier_ground(double v0, int n_basis, int n_k, int points_per_step);

// chi_{0i} = int phi^3(x) phi(x - i) dx by trapezoidal quadrature.
double chi_overlap(const WannierFunction& phi, int i);

// int phi(x) x phi(x - i) dx.
double dipole_element(const WannierFunction& phi, int i);

// The model constants the trimer needs, all computed from one Wannier
// function at depth v0. chi01/chi02 carry the magnitude of the overlap:
// the gauge c_n -> (-1)^n c_n maps chi01 to -chi01, so only |chi01| is
// physical and LatticeParams requires it nonnegative.
struct WannierConstants {
    double chi00;
    double chi01;
    double chi02;
    double x1;
    double x2;
};

WannierConstants lattice_constants(double v0);

}  // namespace chaostrack

#endif
