#pragma once

#include <string>
#include <vector>

#include "g2moduli/instanton_ode.hpp"

namespace g2moduli {

// the two one-parameter families of solutions defined near the singular orbit
enum class Family { TGamma, TPrime };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// explicit abelian solution, global for gamma >= 0; f_minus = 0
InstantonState clarke_solution(double gamma, double r);

// gamma -> infinity limit of clarke_solution; equals the TPrime member at 0
InstantonState lotay_oliveira_solution(double r);

// second-order Taylor expansions at the singular orbit, valid for small t
InstantonState t_gamma_series(double gamma, double t);
InstantonState tprime_series(double gamma_prime, double t);

// seed data for the trajectory engine: truncated power series per component
struct SeriesJet {
    struct Term {
        int power;
        double coeff;
    };
    Family family;
    double parameter;
    std::vector<Term> f_plus;
    std::vector<Term> f_minus;
    int truncation_order;

    InstantonState eval(double t) const;
};

SeriesJet make_jet(Family family, double parameter);

}  // namespace g2moduli
