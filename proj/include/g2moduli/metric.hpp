#pragma once

#include <functional>

namespace g2moduli {

// one point of the cohomogeneity-one metric profile: ds^2 = dt^2 + A^2 g_+ + B^2 g_-
// r = sqrt(3)*B is the rescaled radius, r in [1, inf); t is arclength from the
// singular orbit (NaN when not filled in)
struct MetricSample {
    double t;
    double r;
    double A;
    double B;
};

// profile of the explicit asymptotically conical solution at radius r >= 1
MetricSample metric_at_r(double r);

// reparametrisation speed dr/dt = sqrt(1 - r^-3), r >= 1
double dr_dt(double r);

// arclength t(r) = int_1^r ds/dr_dt, endpoint singularity removed by r = 1 + u^2
double t_of_r(double r, double quad_tol = 1e-12);

// inverse of t_of_r (Newton, quadratic convergence), t >= 0
double r_of_t(double t, double quad_tol = 1e-12);

// exact cone profile A = t/3, B = t/sqrt(3)
MetricSample cone_metric_at_t(double t);

struct HitchinResidual {
    double res_A;  // dA/dt - (1 - A^2/B^2)/2
    double res_B;  // dB/dt - A/B
};

// residual of the first-order flow for the explicit profile at sample.r;
// d/dt by 5-point central difference in r, chain rule through dr_dt
HitchinResidual hitchin_residual(const MetricSample& sample, double h = 1e-5);

// same residual for an arbitrary profile given as functions of r, time
// parametrisation fixed by the background dr_dt
HitchinResidual hitchin_residual_curve_r(const std::function<double(double)>& A_of_r,
                                         const std::function<double(double)>& B_of_r,
                                         double r, double h = 1e-5);

// residual for a profile parametrised by t directly
HitchinResidual hitchin_residual_curve_t(const std::function<double(double)>& A_of_t,
                                         const std::function<double(double)>& B_of_t,
                                         double t, double h = 1e-5);

// first-integral variables of the flow: a = (B^3 + B A^2)/8, p = (B^3 - 3 B A^2)/8;
// p is conserved and the profile satisfies 4 adot^6 = 3a^4 - 8pa^3 + 6p^2a^2 - p^4
struct StructurePair {
    double a;
    double p;
};

StructurePair structure_pair(const MetricSample& sample);

struct StructureResidual {
    double res;    // (4 adot^6 - rhs) / max(1, |lhs|, |rhs|)
    double dp_dr;  // conservation check
};

// a and p are cubic in r, so the five-point rule is truncation-free for any h;
// the wide default suppresses rounding noise in the differences
StructureResidual structure_residual(double r, double h = 1e-2);

}  // namespace g2moduli
