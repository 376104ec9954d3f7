#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <utility>

#include <boost/numeric/odeint.hpp>

namespace trilevel::detail {

/// Adaptive Dormand-Prince 5(4) integration of x' = f(x, t) from t0 to t1
/// with atol = rtol = tol. Steps are clipped so that every time in `stops`
/// (sorted, within (t0, t1]) is hit exactly. `on_accept(t, x)` runs after
/// every accepted step; returning false ends the integration early.
/// `admit(t0, x0, t1, x1)` may veto a step the error controller accepted;
/// the step is then retried at half the size.
template <std::size_t N, typename System, typename Admit, typename OnAccept>
void
integrate_adaptive(System&& system, std::array<double, N>& x, double t0,
                   double t1, double tol, std::span<const double> stops,
                   Admit&& admit, OnAccept&& on_accept)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, N>;
    auto stepper =
        odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(tol, tol);

    const double span = t1 - t0;
    if (!(span > 0.0)) {
        return;
    }
    const double t_eps = 1e-13 * std::max(1.0, std::abs(t1));
    auto next_stop = stops.begin();
    while (next_stop != stops.end() && *next_stop <= t0 + t_eps) {
        ++next_stop;
    }

    double t = t0;
    double dt = std::min(1e-2, span);
    while (t < t1 - t_eps) {
        const double target =
            next_stop != stops.end() ? std::min(*next_stop, t1) : t1;
        bool clipped = false;
        double step = dt;
        if (t + step >= target - t_eps) {
            step = target - t;
            clipped = true;
        }

        const State x_prev = x;
        double t_trial = t;
        double step_trial = step;
        const auto result = stepper.try_step(system, x, t_trial, step_trial);
        bool rejected = result == odeint::fail;
        if (!rejected &&
            !admit(t, static_cast<const State&>(x_prev),
                   clipped ? target : t_trial, static_cast<const State&>(x))) {
            x = x_prev;
            stepper.reset();  // drop the cached FSAL derivative
            step_trial = 0.5 * step;
            rejected = true;
        }
        if (rejected) {
            dt = step_trial;
            if (dt < 1e-14 * std::max(1.0, std::abs(t))) {
                throw std::runtime_error("adaptive integrator: step size underflow");
            }
            continue;
        }

        if (clipped) {
            t = target;
            while (next_stop != stops.end() && *next_stop <= t + t_eps) {
                ++next_stop;
            }
            dt = std::max(dt, step_trial);
        } else {
            t = t_trial;
            dt = step_trial;
        }
        if (!on_accept(t, static_cast<const State&>(x))) {
            return;
        }
    }
}

template <std::size_t N, typename System, typename OnAccept>
void
integrate_adaptive(System&& system, std::array<double, N>& x, double t0,
                   double t1, double tol, std::span<const double> stops,
                   OnAccept&& on_accept)
{
    integrate_adaptive<N>(
        std::forward<System>(system), x, t0, t1, tol, stops,
        [](double, const auto&, double, const auto&) { return true; },
        std::forward<OnAccept>(on_accept));
}

}  // namespace trilevel::detail
