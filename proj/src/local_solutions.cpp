#include "g2moduli/local_solutions.hpp"

#include <stdexcept>
#include <string>

namespace g2moduli {

const char* family_name(Family f) {
    return f == Family::TGamma ? "tgamma" : "tprime";
}

Family family_from_name(const std::string& name) {
    if (name == "tgamma") return Family::TGamma;
    if (name == "tprime") return Family::TPrime;
    throw std::invalid_argument("unknown family '" + name + "' (expected tgamma|tprime)");
}

InstantonState clarke_solution(double gamma, double r) {
    if (!(r >= 1.0)) throw std::domain_error("clarke_solution: r must be >= 1");
    const double num = 2.0 * gamma * (r - 1.0) - 3.0 * r;
    const double den = 2.0 * gamma * r * (r * r - 1.0) + 3.0 * r;
    return InstantonState{(2.0 / 3.0) * (1.0 + num / den), 0.0};
}

InstantonState lotay_oliveira_solution(double r) {
    if (!(r >= 1.0)) throw std::domain_error("lotay_oliveira_solution: r must be >= 1");
    return InstantonState{(2.0 / 3.0) * (1.0 + 1.0 / (r * (r + 1.0))), 0.0};
}

InstantonState t_gamma_series(double gamma, double t) {
    return InstantonState{gamma * (t * t), 0.0};
}

InstantonState tprime_series(double gamma_prime, double t) {
    const double c = gamma_prime * gamma_prime - 1.0;
    return InstantonState{1.0 + 0.375 * c * (t * t),
                          gamma_prime + 0.75 * c * gamma_prime * (t * t)};
}

InstantonState SeriesJet::eval(double t) const {
    auto pow_int = [](double x, int n) {
        double p = 1.0;
        for (int i = 0; i < n; ++i) p *= x;
        return p;
    };
    auto sum_terms = [&](const std::vector<Term>& terms) {
        double acc = 0.0;
        for (const Term& tm : terms) acc += tm.coeff * pow_int(t, tm.power);
        return acc;
    };
    return InstantonState{sum_terms(f_plus), sum_terms(f_minus)};
}

SeriesJet make_jet(Family family, double parameter) {
    SeriesJet jet;
    jet.family = family;
    jet.parameter = parameter;
    jet.truncation_order = 2;
    if (family == Family::TGamma) {
        jet.f_plus = {{2, parameter}};
    } else {
        const double c = parameter * parameter - 1.0;
        jet.f_plus = {{0, 1.0}, {2, 0.375 * c}};
        jet.f_minus = {{0, parameter}, {2, 0.75 * c * parameter}};
    }
    return jet;
}

}  // namespace g2moduli
