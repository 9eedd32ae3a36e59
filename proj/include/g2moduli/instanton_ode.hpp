#pragma once

#include <array>

#include "g2moduli/metric.hpp"

namespace g2moduli {

// invariant connection coefficients (f_plus, f_minus); doubles as a velocity
struct InstantonState {
    double f_plus;
    double f_minus;
};

// coordinates centred on the nearly-Kahler point: f_plus = g_plus + 2/3,
// f_minus = sqrt(3) * g_minus
struct ShiftedState {
    double g_plus;
    double g_minus;
};

ShiftedState to_shifted(const InstantonState& s);
InstantonState from_shifted(const ShiftedState& g);

// full reduced instanton system on the curved background; throws at A = 0
InstantonState rhs_full(double t, const InstantonState& s, const MetricSample& m);

// conical limit system; throws at t = 0
InstantonState rhs_cone(double t, const InstantonState& s);

// conical system in log-time tau = log t (t factored out), unshifted coordinates
InstantonState rhs_autonomous_unshifted(const InstantonState& s);

// same flow in shifted coordinates
ShiftedState rhs_autonomous(const ShiftedState& g);

InstantonState reflect(const InstantonState& s);
ShiftedState reflect(const ShiftedState& g);

// order-3 rotation (1/2)[[-1, sqrt3], [-sqrt3, -1]]; together with reflect it
// generates the S3 symmetry group of the conical system
ShiftedState rotate_cone(const ShiftedState& g);

enum class CriticalKind { Flat, NearlyKahler };

struct CriticalPoint {
    InstantonState s;
    CriticalKind kind;
};

// the four critical points of the conical system: (0,0), (1,1), (1,-1) flat,
// (2/3,0) nearly-Kahler
std::array<CriticalPoint, 4> critical_points();

double dist(const InstantonState& a, const InstantonState& b);
double dist(const ShiftedState& a, const ShiftedState& b);

}  // namespace g2moduli
