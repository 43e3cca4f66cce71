#include "chaostrack/wannier.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chaostrack {

namespace {

constexpr double kPi = std::numbers::pi;

// Plane-wave Hamiltonian at fixed quasimomentum: kinetic (kappa+2 pi l)^2/pi^2
// on the diagonal, potential -v0/2 on the first off-diagonals.
Eigen::MatrixXd plane_wave_hamiltonian(double v0, double kappa, int n_basis) {
    const int half = n_basis / 2;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n_basis, n_basis);
    for (int i = 0; i < n_basis; ++i) {
        const double k = kappa + 2.0 * kPi * (i - half);
        h(i, i) = k * k / (kPi * kPi);
        if (i + 1 < n_basis) {
            h(i, i + 1) = -0.5 * v0;
            h(i + 1, i) = -0.5 * v0;
        }
    }
    return h;
}

void check_basis_args(int n_basis, int n_k) {
    if (n_basis < 11 || n_basis % 2 == 0)
        throw ValidationError("n_basis", "must be odd and >= 11");
    if (n_k < 16) throw ValidationError("n_k", "must be >= 16");
}

std::vector<double> lowest_band_energies(double v0, const std::vector<double>& kappas,
                                         int n_basis) {
    std::vector<double> e;
    e.reserve(kappas.size());
    for (double k : kappas) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            plane_wave_hamiltonian(v0, k, n_basis), Eigen::EigenvaluesOnly);
        e.push_back(solver.eigenvalues()(0));
    }
    return e;
}

}  // namespace

BlochBand bloch_spectrum(double v0, int n_basis, int n_k) {
    if (!(v0 >= 0.0)) throw ValidationError("v0", "must be >= 0");
    check_basis_args(n_basis, n_k);

    BlochBand band;
    band.n_basis = n_basis;
    band.kappa.reserve(n_k);
    for (int j = 0; j < n_k; ++j)
        band.kappa.push_back(-kPi + 2.0 * kPi * (j + 0.5) / n_k);

    band.energy.reserve(n_k);
    band.coeff.reserve(n_k);
    for (double k : band.kappa) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
            plane_wave_hamiltonian(v0, k, n_basis));
        band.energy.push_back(solver.eigenvalues()(0));
        Eigen::VectorXd a = solver.eigenvectors().col(0);
        if (a.sum() < 0.0) a = -a;  // psi_kappa(0) = sum_l a_l > 0
        band.coeff.emplace_back(a.data(), a.data() + a.size());
    }

    const auto refined = lowest_band_energies(v0, band.kappa, 2 * n_basis + 1);
    band.basis_delta = 0.0;
    for (int j = 0; j < n_k; ++j)
        band.basis_delta = std::max(band.basis_delta,
                                    std::abs(refined[j] - band.energy[j]));
    band.basis_converged = band.basis_delta <= 1e-8;
    return band;
}

double band_energy_at(double v0, double kappa, int n_basis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        plane_wave_hamiltonian(v0, kappa, n_basis), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double zone_edge_gap(double v0, int n_basis) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        plane_wave_hamiltonian(v0, kPi, n_basis), Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(1) - solver.eigenvalues()(0);
}

WannierFunction wannier_ground(double v0) { return wannier_ground(v0, 31, 32, 64); }

WannierFunction wannier_ground(double v0, int n_basis, int n_k, int points_per_step) {
    if (!(v0 >= 1.0))
        throw ValidationError("v0", "must be >= 1 (shallower lattices give poorly "
                                    "localized Wannier functions)");
    if (points_per_step < 64)
        throw ValidationError("points_per_step", "must be >= 64");
    const BlochBand band = bloch_spectrum(v0, n_basis, n_k);

    const int n_x = n_k * points_per_step;
    const int half = n_basis / 2;
    WannierFunction w;
    w.dx = 1.0 / points_per_step;
    w.points_per_step = points_per_step;
    w.x.resize(n_x);
    w.phi.assign(n_x, 0.0);
    for (int j = 0; j < n_x; ++j) w.x[j] = (j - n_x / 2) * w.dx;

    // phi(x) = (1/n_k) sum_kappa psi_kappa(x); the midpoint kappa grid pairs
    // kappa with -kappa so the imaginary parts cancel exactly.
    for (int jk = 0; jk < n_k; ++jk) {
        const double kap = band.kappa[jk];
        const auto& a = band.coeff[jk];
        for (int j = 0; j < n_x; ++j) {
            double re = 0.0;
            for (int l = 0; l < n_basis; ++l)
                re += a[l] * std::cos((kap + 2.0 * kPi * (l - half)) * w.x[j]);
            w.phi[j] += re;
        }
    }
    const double inv = 1.0 / n_k;
    double peak = 0.0;
    for (double& v : w.phi) {
        v *= inv;
        peak = std::max(peak, std::abs(v));
    }

    const double boundary = std::max(std::abs(w.phi.front()), std::abs(w.phi.back()));
    if (boundary > 1e-6 * peak)
        throw LocalizationFailureError(
            "Wannier function not localized inside the supercell: boundary/peak = " +
            std::to_string(boundary / peak));
    return w;
}

namespace {

// Trapezoidal integral of f(x) * g(x - i) over the common grid, where both
// come from the same WannierFunction grid and i is an integer number of
// lattice steps.
double shifted_quadrature(const WannierFunction& w, int i, bool weight_x,
                          bool cube_first) {
    const int shift = i * w.points_per_step;
    const int n = static_cast<int>(w.phi.size());
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const int js = j - shift;
        if (js < 0 || js >= n) continue;
        double f = w.phi[j];
        if (cube_first) f = f * f * f;
        double term = f * w.phi[js];
        if (weight_x) term *= w.x[j];
        const bool edge = (j == 0 || j == n - 1);
        sum += edge ? 0.5 * term : term;
    }
    return sum * w.dx;
}

}  // namespace

double chi_overlap(const WannierFunction& phi, int i) {
    if (i < -2 || i > 2) throw ValidationError("i", "must be in {-2..2}");
    return shifted_quadrature(phi, i, false, true);
}

double dipole_element(const WannierFunction& phi, int i) {
    if (i < -2 || i > 2) throw ValidationError("i", "must be in {-2..2}");
    return shifted_quadrature(phi, i, true, false);
}

WannierConstants lattice_constants(double v0) {
    const WannierFunction w = wannier_ground(v0);
    return WannierConstants{
        chi_overlap(w, 0),
        std::abs(chi_overlap(w, 1)),
        std::abs(chi_overlap(w, 2)),
        dipole_element(w, 1),
        dipole_element(w, 2),
    };
}

}  // namespace chaostrack
