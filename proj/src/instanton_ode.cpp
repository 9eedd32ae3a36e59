#include "g2moduli/instanton_ode.hpp"

#include <cmath>
#include <stdexcept>

namespace g2moduli {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kTwoThirds = 2.0 / 3.0;
}  // namespace

ShiftedState to_shifted(const InstantonState& s) {
    return ShiftedState{s.f_plus - kTwoThirds, s.f_minus / kSqrt3};
}

InstantonState from_shifted(const ShiftedState& g) {
    return InstantonState{g.g_plus + kTwoThirds, kSqrt3 * g.g_minus};
}

InstantonState rhs_full(double /*t*/, const InstantonState& s, const MetricSample& m) {
    if (m.A == 0.0)
        throw std::domain_error("rhs_full: singular orbit (A = 0), use a series seed");
    const double q = (m.A * m.A) / (m.B * m.B);
    // grouped so the flat stationary points (0,0), (1,+-1) evaluate to exact zero
    const double fp = (s.f_plus * (1.0 - s.f_plus) + (s.f_minus * s.f_minus - s.f_plus) * q) / m.A;
    const double fm = (2.0 * s.f_minus / m.A) * (s.f_plus - 1.0);
    return InstantonState{fp, fm};
}

InstantonState rhs_cone(double t, const InstantonState& s) {
    if (t == 0.0) throw std::domain_error("rhs_cone: t must be nonzero");
    const InstantonState v = rhs_autonomous_unshifted(s);
    return InstantonState{v.f_plus / t, v.f_minus / t};
}

InstantonState rhs_autonomous_unshifted(const InstantonState& s) {
    return InstantonState{s.f_plus * (2.0 - 3.0 * s.f_plus) + s.f_minus * s.f_minus,
                          6.0 * s.f_minus * (s.f_plus - 1.0)};
}

ShiftedState rhs_autonomous(const ShiftedState& g) {
    return ShiftedState{3.0 * g.g_minus * g.g_minus - g.g_plus * (3.0 * g.g_plus + 2.0),
                        2.0 * g.g_minus * (3.0 * g.g_plus - 1.0)};
}

InstantonState reflect(const InstantonState& s) {
    return InstantonState{s.f_plus, -s.f_minus};
}

ShiftedState reflect(const ShiftedState& g) {
    return ShiftedState{g.g_plus, -g.g_minus};
}

ShiftedState rotate_cone(const ShiftedState& g) {
    return ShiftedState{0.5 * (-g.g_plus + kSqrt3 * g.g_minus),
                        0.5 * (-kSqrt3 * g.g_plus - g.g_minus)};
}

std::array<CriticalPoint, 4> critical_points() {
    return {CriticalPoint{{0.0, 0.0}, CriticalKind::Flat},
            CriticalPoint{{1.0, 1.0}, CriticalKind::Flat},
            CriticalPoint{{1.0, -1.0}, CriticalKind::Flat},
            CriticalPoint{{kTwoThirds, 0.0}, CriticalKind::NearlyKahler}};
}

double dist(const InstantonState& a, const InstantonState& b) {
    return std::hypot(a.f_plus - b.f_plus, a.f_minus - b.f_minus);
}

double dist(const ShiftedState& a, const ShiftedState& b) {
    return std::hypot(a.g_plus - b.g_plus, a.g_minus - b.g_minus);
}

}  // namespace g2moduli
