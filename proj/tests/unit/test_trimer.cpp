#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "chaostrack/trimer.hpp"
#include "support/oracles.hpp"

using namespace chaostrack;
using namespace chaostrack::testing;

namespace {

LatticeParams fig2_params(double g) {
    LatticeParams p;
    p.omega_b = 0.25;
    p.chi00 = 2.0;
    p.chi01 = 0.05;
    p.g = g;
    return p;
}

ModeState fig2_state() {
    return ModeState::from_polar({0.10, 0.65, 0.25}, {0.0, 0.0, std::numbers::pi});
}

}  // namespace

TEST_CASE("trimer_rhs: ladder eigenstates and single-well rotation") {
    LatticeParams p = fig2_params(0.0);

    ModeState center;
    center.c = {0.0, 1.0, 0.0};
    auto d = trimer_rhs(center, p);
    for (const auto& v : d) CHECK(std::abs(v) < 1e-15);

    ModeState right;
    right.c = {0.0, 0.0, 1.0};
    d = trimer_rhs(right, p);
    CHECK(std::abs(d[0]) < 1e-15);
    CHECK(std::abs(d[1]) < 1e-15);
    CHECK(std::abs(d[2] - Complex(0.0, -0.25)) < 1e-15);

    p.g = 0.1;
    p.chi01 = 0.0;
    d = trimer_rhs(center, p);
    CHECK(std::abs(d[1] - Complex(0.0, -0.2)) < 1e-15);
}

TEST_CASE("trimer_rhs equals -i grad of total_energy (finite differences)") {
    std::mt19937 rng(7);
    LatticeParams p = fig2_params(0.2);
    for (int trial = 0; trial < 50; ++trial) {
        const ModeState s = random_state(rng);
        const Amplitudes rhs = trimer_rhs(s, p);
        const Amplitudes oracle = fd_energy_gradient_rhs(s.c, p);
        for (int i = 0; i < 3; ++i) {
            const double scale = std::max(std::abs(rhs[i]), 1e-3);
            CHECK(std::abs(rhs[i] - oracle[i]) / scale < 1e-6);
        }
    }
}

TEST_CASE("total_energy anchor values") {
    LatticeParams p = fig2_params(0.0);
    ModeState center;
    center.c = {0.0, 1.0, 0.0};
    CHECK(total_energy(center, p) == doctest::Approx(0.0).epsilon(1e-14));

    ModeState right;
    right.c = {0.0, 0.0, 1.0};
    CHECK(total_energy(right, p) == doctest::Approx(0.25).epsilon(1e-14));

    p.g = 0.1;
    CHECK(total_energy(center, p) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("mean_position anchors and gauge invariance") {
    LatticeParams p = fig2_params(0.1);
    ModeState center;
    center.c = {0.0, 1.0, 0.0};
    CHECK(mean_position(center, p) == doctest::Approx(0.0).epsilon(1e-14));

    ModeState right;
    right.c = {0.0, 0.0, 1.0};
    CHECK(mean_position(right, p) == doctest::Approx(1.0).epsilon(1e-14));

    LatticeParams q = p;
    q.x1 = 0.1;
    q.x2 = 0.0;
    const ModeState half = ModeState::from_polar({0.0, 0.5, 0.5}, {0.0, 0.0, 0.0});
    CHECK(mean_position(half, q) == doctest::Approx(0.6).epsilon(1e-12));

    std::mt19937 rng(11);
    const ModeState s = random_state(rng);
    ModeState rotated = s;
    const Complex phase = std::polar(1.0, 0.8343);
    for (auto& a : rotated.c) a *= phase;
    CHECK(mean_position(rotated, p) ==
          doctest::Approx(mean_position(s, p)).epsilon(1e-12));
    CHECK(total_energy(rotated, p) ==
          doctest::Approx(total_energy(s, p)).epsilon(1e-12));
}

TEST_CASE("integrate: linear limit matches the exact ladder rotation") {
    LatticeParams p = fig2_params(0.0);
    const ModeState s0 = fig2_state();
    const double t_end = 10.0 * p.bloch_period();
    const Trajectory traj = integrate(s0, p, t_end, 0.005, 0.2);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const double t = traj.time(k);
        for (int i = 0; i < 3; ++i) {
            const double n = i - 1.0;
            const Complex exact = s0.c[i] * std::polar(1.0, -n * p.omega_b * t);
            worst = std::max(worst, std::abs(traj.states[k].c[i] - exact));
        }
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("integrate: single-well nonlinear phase rotation") {
    LatticeParams p = fig2_params(0.1);
    p.chi01 = 0.0;
    ModeState s0;
    s0.c = {0.0, 1.0, 0.0};
    const Trajectory traj = integrate(s0, p, 50.0, 0.005, 0.5);
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const Complex exact = std::polar(1.0, -p.g * p.chi00 * traj.time(k));
        worst = std::max(worst, std::abs(traj.states[k].c[1] - exact));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("integrate: norm and energy conservation in the chaotic regime") {
    LatticeParams p = fig2_params(0.25);
    const ModeState s0 = fig2_state();

    // 1e4 steps at dt = 0.005
    const Trajectory short_run = integrate(s0, p, 50.0, 0.005, 50.0);
    CHECK(std::abs(short_run.states.back().total_population() - 1.0) < 1e-9);

    const double t_end = 100.0 * p.bloch_period();
    const Trajectory traj = integrate(s0, p, t_end, 0.005, t_end / 100.0);
    const double e0 = total_energy(s0, p);
    double worst = 0.0;
    for (const auto& s : traj.states)
        worst = std::max(worst, std::abs(total_energy(s, p) - e0));
    CHECK(worst / std::max(std::abs(e0), 1.0) < 1e-7);
}

TEST_CASE("integrate: blow-up reports a diagnostic error") {
    LatticeParams p = fig2_params(50.0);
    const ModeState s0 = fig2_state();
    CHECK_THROWS_AS(integrate(s0, p, 200.0, 0.5, 1.0), SimulationError);
}

TEST_CASE("bohr_frequencies: degenerate ladder and Fig. 2 populations") {
    LatticeParams p = fig2_params(0.0);
    const std::array<double, 3> pops{0.10, 0.65, 0.25};

    auto b = bohr_frequencies(pops, p);
    CHECK(b.w10 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.w0m1 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(b.w1m1 == doctest::Approx(0.5).epsilon(1e-14));

    // slopes: w10 = 0.25 - 0.8 g, w0m1 = 0.25 + 1.1 g, w1m1 = 0.5 + 0.3 g
    p.g = 0.05;
    b = bohr_frequencies(pops, p);
    CHECK(b.w10 == doctest::Approx(0.21).epsilon(1e-12));
    CHECK(b.w0m1 == doctest::Approx(0.305).epsilon(1e-12));
    CHECK(b.w1m1 == doctest::Approx(0.515).epsilon(1e-12));
}

TEST_CASE("combination_frequency and the q = -2 resonance") {
    LatticeParams p = fig2_params(0.0);
    const std::array<double, 3> pops{0.10, 0.65, 0.25};
    auto b = bohr_frequencies(pops, p);
    CHECK(combination_frequency(1, 0, 0, b) == doctest::Approx(b.w0m1));
    CHECK(combination_frequency(0, 0, 1, b) == doctest::Approx(0.5));

    p.g = 0.0926;
    b = bohr_frequencies(pops, p);
    CHECK(std::abs(combination_frequency(1, -2, 0, b)) < 1e-3);
}

TEST_CASE("first_order_resonance_g reproduces the resonance ladder") {
    const LatticeParams p = fig2_params(0.0);
    const std::array<double, 3> pops{0.10, 0.65, 0.25};

    auto g2 = first_order_resonance_g(1, -2, 0, pops, p);
    REQUIRE(g2.has_value());
    CHECK(*g2 == doctest::Approx(0.0926).epsilon(2e-3));
    CHECK(*g2 == doctest::Approx(0.25 / 2.7).epsilon(1e-12));

    CHECK(*first_order_resonance_g(1, -3, 0, pops, p) ==
          doctest::Approx(0.142857142857).epsilon(1e-10));
    CHECK(*first_order_resonance_g(1, -4, 0, pops, p) ==
          doctest::Approx(0.174418604651).epsilon(1e-10));
    CHECK(*first_order_resonance_g(1, -5, 0, pops, p) ==
          doctest::Approx(0.196078431373).epsilon(1e-10));

    // coefficient of g vanishes together with p + q + 2r
    const std::array<double, 3> equal{1.0 / 3, 1.0 / 3, 1.0 / 3};
    CHECK_THROWS_AS((void)first_order_resonance_g(1, -1, 0, equal, p),
                    DegenerateCombinationError);

    // resonance at negative g is unphysical
    CHECK_FALSE(first_order_resonance_g(1, 1, 0, pops, p).has_value());
}
