#include "g2moduli/metric.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "g2moduli/numerics.hpp"

namespace g2moduli {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

// 1 - r^-3 without cancellation near r = 1
double one_minus_r3(double r) {
    return -std::expm1(-3.0 * std::log(r));
}

// integrand of t(r) after r = 1 + u^2: 2u / sqrt(1 - (1+u^2)^-3); analytic at u = 0
double arclength_integrand(double u) {
    if (u == 0.0) return 2.0 / kSqrt3;
    const double g = -std::expm1(-3.0 * std::log1p(u * u));
    return 2.0 * u / std::sqrt(g);
}

void require_radius(double r, const char* who) {
    if (!(r >= 1.0))
        throw std::domain_error(std::string(who) + ": radius must satisfy r >= 1");
}

}  // namespace

MetricSample metric_at_r(double r) {
    require_radius(r, "metric_at_r");
    MetricSample s;
    s.t = std::numeric_limits<double>::quiet_NaN();
    s.r = r;
    s.A = (r / 3.0) * std::sqrt(one_minus_r3(r));
    s.B = r / kSqrt3;
    return s;
}

double dr_dt(double r) {
    require_radius(r, "dr_dt");
    return std::sqrt(one_minus_r3(r));
}

double t_of_r(double r, double quad_tol) {
    require_radius(r, "t_of_r");
    if (r == 1.0) return 0.0;
    return integrate_gk15(arclength_integrand, 0.0, std::sqrt(r - 1.0), quad_tol);
}

double r_of_t(double t, double quad_tol) {
    if (!(t >= 0.0)) throw std::domain_error("r_of_t: t must be >= 0");
    if (t == 0.0) return 1.0;
    double r = t < 1.2 ? 1.0 + 0.75 * t * t : t + 0.45;
    for (int it = 0; it < 80; ++it) {
        const double f = t_of_r(r, quad_tol) - t;
        const double step = f * dr_dt(r);  // dt/dr = 1/dr_dt
        double next = r - step;
        if (next < 1.0) next = 0.5 * (r + 1.0);
        if (std::abs(next - r) <= 1e-14 * std::max(1.0, r)) return next;
        r = next;
    }
    throw std::runtime_error("r_of_t: Newton iteration failed to converge");
}

MetricSample cone_metric_at_t(double t) {
    if (!(t > 0.0)) throw std::domain_error("cone_metric_at_t: t must be > 0");
    return MetricSample{t, t, t / 3.0, t / kSqrt3};
}

HitchinResidual hitchin_residual_curve_r(const std::function<double(double)>& A_of_r,
                                         const std::function<double(double)>& B_of_r,
                                         double r, double h) {
    require_radius(r - 2.0 * h, "hitchin_residual_curve_r");
    const double v = dr_dt(r);
    const double A = A_of_r(r), B = B_of_r(r);
    const double dA = deriv_central5(A_of_r, r, h) * v;
    const double dB = deriv_central5(B_of_r, r, h) * v;
    return HitchinResidual{dA - 0.5 * (1.0 - (A * A) / (B * B)), dB - A / B};
}

HitchinResidual hitchin_residual_curve_t(const std::function<double(double)>& A_of_t,
                                         const std::function<double(double)>& B_of_t,
                                         double t, double h) {
    const double A = A_of_t(t), B = B_of_t(t);
    const double dA = deriv_central5(A_of_t, t, h);
    const double dB = deriv_central5(B_of_t, t, h);
    return HitchinResidual{dA - 0.5 * (1.0 - (A * A) / (B * B)), dB - A / B};
}

HitchinResidual hitchin_residual(const MetricSample& sample, double h) {
    return hitchin_residual_curve_r([](double r) { return metric_at_r(r).A; },
                                    [](double r) { return metric_at_r(r).B; },
                                    sample.r, h);
}

StructurePair structure_pair(const MetricSample& s) {
    const double B3 = s.B * s.B * s.B;
    const double BA2 = s.B * s.A * s.A;
    return StructurePair{(B3 + BA2) / 8.0, (B3 - 3.0 * BA2) / 8.0};
}

StructureResidual structure_residual(double r, double h) {
    require_radius(r - 2.0 * h, "structure_residual");
    auto a_of_r = [](double rr) { return structure_pair(metric_at_r(rr)).a; };
    auto p_of_r = [](double rr) { return structure_pair(metric_at_r(rr)).p; };
    const double adot = deriv_central5(a_of_r, r, h) * dr_dt(r);
    const StructurePair sp = structure_pair(metric_at_r(r));
    const double lhs = 4.0 * std::pow(adot, 6);
    const double a2 = sp.a * sp.a, p2 = sp.p * sp.p;
    const double rhs = 3.0 * a2 * a2 - 8.0 * sp.p * a2 * sp.a + 6.0 * p2 * a2 - p2 * p2;
    const double scale = std::max(1.0, std::max(std::abs(lhs), std::abs(rhs)));
    return StructureResidual{(lhs - rhs) / scale, deriv_central5(p_of_r, r, h)};
}

}  // namespace g2moduli
