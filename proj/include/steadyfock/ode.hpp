// ode.hpp - Adaptive Dormand-Prince 5(4) integrator on complex vectors.
//
// Embedded error control with a PI-free step controller: accept when the
// weighted RMS error is <= 1, step factor clamped to [0.2, 5].  FSAL stage
// reuse.  Throws on step-size underflow, reporting the offending time.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "steadyfock/types.hpp"

namespace sfock {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double first_step = 0.0;  // 0 = choose from max_step / interval
    long max_steps = 200'000'000;
};

struct OdeStats {
    long steps = 0;
    long rejected = 0;
    double last_step = 0.0;
};

namespace detail {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

}  // namespace detail

// Integrates dy/dt = f(t, y) from t0 to t1.  f has signature
// void(double t, const Vector& y, Vector& dydt).
template <class F>
Vector ode_integrate(F&& f, double t0, double t1, Vector y, const OdeOptions& opt = {},
                     OdeStats* stats = nullptr) {
    using namespace detail;
    if (t1 < t0) throw std::invalid_argument("ode_integrate: t1 must be >= t0");
    if (t1 == t0) return y;
    const Eigen::Index n = y.size();
    Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    double t = t0;
    double h = opt.first_step > 0 ? opt.first_step
                                  : std::min(opt.max_step, (t1 - t0) / 100.0);
    h = std::min(h, t1 - t0);
    f(t, y, k1);
    long steps = 0, rejected = 0;
    const double hmin_floor = 1e-14 * std::max(1.0, std::abs(t1));

    while (t < t1) {
        if (t1 - t <= hmin_floor) break;  // endpoint reached to within roundoff
        if (steps++ > opt.max_steps)
            throw std::runtime_error("ode_integrate: step budget exhausted at t=" +
                                     std::to_string(t));
        if (h < hmin_floor)
            throw std::runtime_error("ode_integrate: step size underflow at t=" +
                                     std::to_string(t));
        h = std::min({h, opt.max_step, t1 - t});

        ytmp = y + h * (a21 * k1);
        f(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        f(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        f(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        f(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        f(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        f(t + h, ynew, k7);

        // Weighted RMS of the embedded error estimate.
        double err2 = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
            double scale = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double q = std::abs(e) / scale;
            err2 += q * q;
        }
        double err = std::sqrt(err2 / double(n));

        if (err <= 1.0) {
            t += h;
            y.swap(ynew);
            k1.swap(k7);  // FSAL
            double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
            if (stats) stats->last_step = h;
        } else {
            ++rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    if (stats) {
        stats->steps += steps;
        stats->rejected += rejected;
    }
    return y;
}

// Integrates through an increasing time grid, invoking obs(t_i, y) at every
// grid point (including times[0]).
template <class F, class Obs>
void ode_integrate_path(F&& f, const std::vector<double>& times, Vector y,
                        Obs&& obs, const OdeOptions& opt = {}, OdeStats* stats = nullptr) {
    if (times.empty()) throw std::invalid_argument("ode_integrate_path: empty time grid");
    for (size_t i = 1; i < times.size(); ++i)
        if (times[i] < times[i - 1])
            throw std::invalid_argument("ode_integrate_path: time grid must be increasing");
    obs(times[0], y);
    for (size_t i = 1; i < times.size(); ++i) {
        y = ode_integrate(f, times[i - 1], times[i], std::move(y), opt, stats);
        obs(times[i], y);
    }
}

}  // namespace sfock
