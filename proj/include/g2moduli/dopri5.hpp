#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace g2moduli {

// deterministic PI step-size controller constants; fixed by config so two runs
// with identical inputs are bitwise identical
struct StepControl {
    double safety = 0.9;
    double alpha = 0.17;  // exponent on current error
    double beta = 0.04;   // exponent on previous error
    double fac_min = 0.2;
    double fac_max = 5.0;
    double max_step_fraction = 0.04;     // h <= fraction * t, keeps sample density
    double initial_step_fraction = 1e-3; // h0 = fraction * t0
    long max_steps = 20000000;
};

enum class StepperStatus { ReachedEnd, StoppedByObserver, Underflow, MaxSteps };

struct StepperStats {
    long steps = 0;     // accepted
    long rejected = 0;
    double final_step = 0.0;
};

// Dormand-Prince 5(4) embedded pair. F: (t, y) -> dy/dt. Observer is called
// after every accepted step with (t, y) and returns false to stop.
template <std::size_t N, class F, class Observer>
StepperStatus dopri5_integrate(F&& f, double t0, std::array<double, N> y,
                               double t_end, double rtol, double atol,
                               const StepControl& ctl, Observer&& observe,
                               StepperStats* stats = nullptr) {
    using Vec = std::array<double, N>;

    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    double t = t0;
    double h = ctl.initial_step_fraction * std::max(t0, 1e-30);
    double err_prev = 1.0;
    Vec k1 = f(t, y);

    for (long attempt = 0; attempt < ctl.max_steps; ++attempt) {
        if (t >= t_end) return StepperStatus::ReachedEnd;
        const double h_cap = ctl.max_step_fraction * std::max(t, t0);
        if (h > h_cap) h = h_cap;
        bool last = false;
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }
        if (!(h > std::abs(t) * 1e-15 + 1e-300)) return StepperStatus::Underflow;

        Vec y2, y3, y4, y5, y6, yn;
        for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + h * (a21 * k1[i]);
        const Vec k2 = f(t + c2 * h, y2);
        for (std::size_t i = 0; i < N; ++i) y3[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        const Vec k3 = f(t + c3 * h, y3);
        for (std::size_t i = 0; i < N; ++i)
            y4[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        const Vec k4 = f(t + c4 * h, y4);
        for (std::size_t i = 0; i < N; ++i)
            y5[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        const Vec k5 = f(t + c5 * h, y5);
        for (std::size_t i = 0; i < N; ++i)
            y6[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                a65 * k5[i]);
        const Vec k6 = f(t + h, y6);
        for (std::size_t i = 0; i < N; ++i)
            yn[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);
        const Vec k7 = f(t + h, yn);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
            err_sq += (e / sc) * (e / sc);
        }
        const double err = std::sqrt(err_sq / static_cast<double>(N));

        if (err <= 1.0) {
            t = last ? t_end : t + h;
            y = yn;
            k1 = k7;  // FSAL
            if (stats) {
                ++stats->steps;
                stats->final_step = h;
            }
            if (!observe(t, y)) return StepperStatus::StoppedByObserver;
            const double gain =
                err == 0.0 ? ctl.fac_max
                           : ctl.safety * std::pow(err, -ctl.alpha) * std::pow(err_prev, ctl.beta);
            h *= std::min(ctl.fac_max, std::max(ctl.fac_min, gain));
            err_prev = std::max(err, 1e-10);
        } else {
            if (stats) ++stats->rejected;
            const double gain = ctl.safety * std::pow(err, -ctl.alpha);
            h *= std::max(ctl.fac_min, std::min(1.0, gain));
        }
    }
    return StepperStatus::MaxSteps;
}

}  // namespace g2moduli
