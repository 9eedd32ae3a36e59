#pragma once

#include <array>
#include <string>
#include <vector>

#include "g2moduli/config.hpp"

namespace g2moduli {

enum class Outcome { Flat, ConvergesToNK, BlowUp, Inconclusive };

const char* outcome_name(Outcome o);

// tail fit of f_plus - 2/3 and f_minus against the t^-2 decay law
struct DecayFit {
    double mu = 0.0;               // coefficient of t^-2 in f_plus - 2/3
    double nu = 0.0;               // coefficient of t^-2 in f_minus
    double exponent = 0.0;         // shared log-log slope
    double slope_plus = 0.0;       // per-component slopes
    double slope_minus = 0.0;      // NaN when f_minus is identically ~0
    double connection_rate = 0.0;  // slope of log((|u|+|v|)/t), coframe-weighted
    double max_log_residual = 0.0;
    std::size_t n_tail = 0;
};

// window [max(min_time, fraction * t_end), t_end]; needs >= 50 samples over a decade
DecayFit fit_decay(const Trajectory& traj, double min_time, double fraction);

struct ClassificationRecord {
    Family family;
    double parameter = 0.0;
    Outcome outcome = Outcome::Inconclusive;
    Termination termination = Termination::StepFailure;
    double mu = std::numeric_limits<double>::quiet_NaN();
    double nu = std::numeric_limits<double>::quiet_NaN();
    double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
    double t_escape = std::numeric_limits<double>::quiet_NaN();
    bool has_fit = false;
    DecayFit fit;
    std::string note;
};

ClassificationRecord classify(const Trajectory& traj, Family family, double parameter,
                              const RunConfig& cfg);

// integrate from the series seed, then classify; t_max_override > 0 replaces cfg.t_max
ClassificationRecord classify_parameter(Family family, double parameter,
                                        const RunConfig& cfg, double t_max_override = 0.0);

std::vector<ClassificationRecord> scan_family(Family family, double from, double to,
                                              double step, const RunConfig& cfg);

struct BoundaryProbe {
    double parameter;
    Outcome outcome;
};

struct BoundaryResult {
    double gamma_crit;
    double bracket_lo, bracket_hi;
    std::vector<BoundaryProbe> probes;
};

// bisection between a bounded outcome (Flat/ConvergesToNK) and BlowUp; either
// bracket orientation is accepted
BoundaryResult locate_boundary(Family family, double lo, double hi, double tol_param,
                               const RunConfig& cfg);

// straight-line solution of the conical system through the origin and the
// nearly-Kahler point, f_plus = 2t^2/(1+3t^2), and its two rotated images
InstantonState cone_line_solution(double t);
InstantonState cone_line_image(double t, int k);
InstantonState cone_line_image_velocity(double t, int k);

// deformation index of the model operator by rate weight; defined on
// (-4,0) \ {-2}, throws elsewhere
struct IndexTableEntry {
    double lo, hi;
    int index;
};

std::array<IndexTableEntry, 2> index_table();
int index_lookup(double weight);

}  // namespace g2moduli
