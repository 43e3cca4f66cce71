#ifndef CHAOSTRACK_LATTICE_HPP
#define CHAOSTRACK_LATTICE_HPP

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chaostrack/errors.hpp"

namespace chaostrack {

using Complex = std::complex<double>;

// Model constants of the tilted-lattice problem, lengths in lattice steps
// and energies in recoil units. In these units the reduced mass is the
// fixed constant m = pi^2/2; it is part of the unit system, not a field.
struct LatticeParams {
    double v0 = 5.0;       // lattice depth
    double omega_b = 0.25; // Bloch frequency (force in normalized units)
    double g = 0.0;        // nonlinearity strength
    double chi00 = 2.0;    // self-overlap  int phi^4 dx
    double chi01 = 0.05;   // neighbor overlap  int phi^3(x) phi(x-1) dx
    double x1 = 0.1;       // nearest-neighbor dipole element  int phi(x) x phi(x-1) dx
    double x2 = 0.01;      // next-nearest dipole element      int phi(x) x phi(x-2) dx

    double bloch_period() const { return 2.0 * std::numbers::pi / omega_b; }

    // Throws ValidationError naming the offending field.
    void validate() const {
        if (!(v0 > 0.0)) throw ValidationError("v0", "must be > 0");
        if (!(omega_b > 0.0)) throw ValidationError("omega_b", "must be > 0");
        if (!(g >= 0.0)) throw ValidationError("g", "must be >= 0");
        if (!(chi00 > 0.0)) throw ValidationError("chi00", "must be > 0");
        if (!(chi01 >= 0.0)) throw ValidationError("chi01", "must be >= 0");
        if (!(chi01 < chi00)) throw ValidationError("chi01", "must be < chi00");
    }
};

// Complex amplitudes c_n of the three Wannier-Stark modes, wells
// n = -1, 0, +1 stored at indices 0, 1, 2. Convention
// c_n = sqrt(I_n) exp(-i theta_n), so I_n = |c_n|^2 and theta_n = -arg c_n.
struct ModeState {
    std::array<Complex, 3> c{};

    static constexpr std::array<int, 3> wells = {-1, 0, 1};

    static ModeState from_polar(const std::array<double, 3>& populations,
                                const std::array<double, 3>& phases) {
        ModeState s;
        for (int i = 0; i < 3; ++i)
            s.c[i] = std::sqrt(populations[i]) *
                     Complex(std::cos(phases[i]), -std::sin(phases[i]));
        return s;
    }

    double population(int well) const { return std::norm(c[well + 1]); }
    double phase(int well) const { return -std::arg(c[well + 1]); }

    double total_population() const {
        return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
    }

    bool finite() const {
        for (const auto& a : c)
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
        return true;
    }

    bool normalized(double tol = 1e-9) const {
        return std::abs(total_population() - 1.0) <= tol;
    }
};

// Uniformly sampled sequence of mode states: sample k is at t0 + k*dt_sample.
struct Trajectory {
    double t0 = 0.0;
    double dt_sample = 0.0;
    std::vector<ModeState> states;

    double time(std::size_t k) const { return t0 + static_cast<double>(k) * dt_sample; }
    std::size_t size() const { return states.size(); }
};

}  // namespace chaostrack

#endif
