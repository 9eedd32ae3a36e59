#include "g2moduli/numerics.hpp"

#include <cmath>

namespace g2moduli {

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_linear: need >= 2 matched samples");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_linear: degenerate abscissae");
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i)
        fit.max_residual = std::max(fit.max_residual,
                                    std::abs(y[i] - (fit.slope * x[i] + fit.intercept)));
    return fit;
}

SharedSlopeFit fit_shared_slope(const std::vector<std::vector<double>>& xs,
                                const std::vector<std::vector<double>>& ys) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("fit_shared_slope: series count mismatch");
    double num = 0.0, den = 0.0;
    std::vector<double> mx(xs.size()), my(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) {
        if (xs[s].size() != ys[s].size() || xs[s].size() < 2)
            throw std::invalid_argument("fit_shared_slope: need >= 2 samples per series");
        double ax = 0.0, ay = 0.0;
        for (std::size_t i = 0; i < xs[s].size(); ++i) {
            ax += xs[s][i];
            ay += ys[s][i];
        }
        mx[s] = ax / static_cast<double>(xs[s].size());
        my[s] = ay / static_cast<double>(xs[s].size());
        for (std::size_t i = 0; i < xs[s].size(); ++i) {
            num += (xs[s][i] - mx[s]) * (ys[s][i] - my[s]);
            den += (xs[s][i] - mx[s]) * (xs[s][i] - mx[s]);
        }
    }
    if (den == 0.0) throw std::invalid_argument("fit_shared_slope: degenerate abscissae");
    SharedSlopeFit fit;
    fit.slope = num / den;
    fit.intercepts.resize(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) {
        fit.intercepts[s] = my[s] - fit.slope * mx[s];
        for (std::size_t i = 0; i < xs[s].size(); ++i)
            fit.max_residual =
                std::max(fit.max_residual,
                         std::abs(ys[s][i] - (fit.slope * xs[s][i] + fit.intercepts[s])));
    }
    return fit;
}

}  // namespace g2moduli
