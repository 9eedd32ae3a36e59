#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace g2moduli {

// 4th-order central difference, 5-point stencil
template <class F>
double deriv_central5(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

// adaptive Gauss-Kronrod 7-15 on [a,b]; recursion splits until the
// embedded error estimate passes tol * max(1, |integral|)
template <class F>
double integrate_gk15(F&& f, double a, double b, double tol) {
    // nodes/weights for K15, G7 weights on the shared nodes (abscissae >= 0)
    static constexpr std::array<double, 8> xk = {
        0.0,
        0.2077849550078985, 0.4058451513773972, 0.5860872354676911,
        0.7415311855993945, 0.8648644233597691, 0.9491079123427585,
        0.9914553711208126};
    static constexpr std::array<double, 8> wk = {
        0.2094821410847278,
        0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
        0.1406532597155259, 0.1047900103222502, 0.0630920926299786,
        0.0229353220105292};
    static constexpr std::array<double, 4> wg = {
        0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
        0.1294849661688697};

    struct Panel {
        double a, b;
        int depth;
    };

    auto eval = [&](double lo, double hi, double& k15, double& g7) {
        const double c = 0.5 * (lo + hi), hlen = 0.5 * (hi - lo);
        double fk = 0.0, fg = 0.0;
        const double f0 = f(c);
        fk += wk[0] * f0;
        fg += wg[0] * f0;
        for (int i = 1; i < 8; ++i) {
            const double d = hlen * xk[i];
            const double s = f(c - d) + f(c + d);
            fk += wk[i] * s;
            if (i % 2 == 0) fg += wg[i / 2] * s;
        }
        k15 = fk * hlen;
        g7 = fg * hlen;
    };

    if (!(b >= a)) throw std::invalid_argument("integrate_gk15: b < a");
    if (a == b) return 0.0;

    std::vector<Panel> stack{{a, b, 0}};
    double total = 0.0;
    const double span = b - a;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        double k15, g7;
        eval(p.a, p.b, k15, g7);
        const double err = std::abs(k15 - g7);
        const double local_tol = tol * std::max(1.0, std::abs(k15)) * (p.b - p.a) / span;
        if (err <= local_tol || p.depth >= 52) {
            total += k15;
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    return total;
}

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;  // max |y - (slope*x + intercept)|
};

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

// least squares with one shared slope and one intercept per series
struct SharedSlopeFit {
    double slope = 0.0;
    std::vector<double> intercepts;
    double max_residual = 0.0;
};

SharedSlopeFit fit_shared_slope(const std::vector<std::vector<double>>& xs,
                                const std::vector<std::vector<double>>& ys);

}  // namespace g2moduli
