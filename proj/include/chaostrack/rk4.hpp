#ifndef CHAOSTRACK_RK4_HPP
#define CHAOSTRACK_RK4_HPP

#include <array>
#include <cstddef>

namespace chaostrack {

// Classical fourth-order one-step method on fixed-size state arrays.
// Rhs signature: void(const State&, State& dydt). Autonomous systems only.
template <class State, class Rhs>
inline void rk4_step(State& y, double dt, Rhs&& rhs) {
    constexpr std::size_t n = std::tuple_size<State>::value;
    State k1, k2, k3, k4, tmp;
    rhs(y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k1[i];
    rhs(tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * dt * k2[i];
    rhs(tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + dt * k3[i];
    rhs(tmp, k4);
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < n; ++i)
        y[i] += w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace chaostrack

#endif
