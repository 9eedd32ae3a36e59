#include "g2moduli/classify.hpp"

#include <cmath>
#include <stdexcept>

#include "g2moduli/numerics.hpp"

namespace g2moduli {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kMinusSilentFloor = 1e-14;  // below this f_minus counts as dead
}  // namespace

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Flat: return "Flat";
        case Outcome::ConvergesToNK: return "ConvergesToNK";
        case Outcome::BlowUp: return "BlowUp";
        case Outcome::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

DecayFit fit_decay(const Trajectory& traj, double min_time, double fraction) {
    if (traj.samples.empty()) throw std::invalid_argument("fit_decay: empty trajectory");
    const double t_end = traj.samples.back().t;
    const double t_fit = std::max(min_time, fraction * t_end);
    if (!(t_end / t_fit >= 10.0))
        throw std::invalid_argument("fit_decay: window spans less than a decade");

    std::vector<double> xu, yu, xv, yv, xw, yw;
    double max_v = 0.0;
    for (const TrajectorySample& smp : traj.samples) {
        if (smp.t < t_fit) continue;
        max_v = std::max(max_v, std::abs(smp.s.f_minus));
    }
    const bool minus_alive = max_v >= kMinusSilentFloor;

    double mu_acc = 0.0, nu_acc = 0.0;
    std::size_t n_tail = 0;
    for (const TrajectorySample& smp : traj.samples) {
        if (smp.t < t_fit) continue;
        ++n_tail;
        const double u = smp.s.f_plus - 2.0 / 3.0;
        const double v = smp.s.f_minus;
        const double x = std::log(smp.t);
        mu_acc += u * smp.t * smp.t;
        nu_acc += v * smp.t * smp.t;
        if (std::abs(u) > 1e-280) {
            xu.push_back(x);
            yu.push_back(std::log(std::abs(u)));
        }
        if (minus_alive && std::abs(v) > 1e-280) {
            xv.push_back(x);
            yv.push_back(std::log(std::abs(v)));
        }
        const double w = std::abs(u) + std::abs(v);
        if (w > 1e-280) {
            xw.push_back(x);
            yw.push_back(std::log(w / smp.t));
        }
    }
    if (n_tail < 50) throw std::invalid_argument("fit_decay: fewer than 50 tail samples");

    DecayFit fit;
    fit.n_tail = n_tail;
    fit.mu = mu_acc / static_cast<double>(n_tail);
    fit.nu = minus_alive ? nu_acc / static_cast<double>(n_tail) : 0.0;

    const LinearFit fu = fit_linear(xu, yu);
    fit.slope_plus = fu.slope;
    if (minus_alive) {
        const LinearFit fv = fit_linear(xv, yv);
        fit.slope_minus = fv.slope;
        const SharedSlopeFit joint = fit_shared_slope({xu, xv}, {yu, yv});
        fit.exponent = joint.slope;
        fit.max_log_residual = joint.max_residual;
    } else {
        fit.slope_minus = std::numeric_limits<double>::quiet_NaN();
        fit.exponent = fu.slope;
        fit.max_log_residual = fu.max_residual;
    }
    fit.connection_rate = fit_linear(xw, yw).slope;
    return fit;
}

namespace {

bool is_flat_trajectory(const Trajectory& traj, double flat_tol) {
    const InstantonState s0 = traj.samples.front().s;
    bool at_flat_point = false;
    for (const CriticalPoint& cp : critical_points())
        if (cp.kind == CriticalKind::Flat && dist(s0, cp.s) <= flat_tol) at_flat_point = true;
    if (!at_flat_point) return false;
    for (const TrajectorySample& smp : traj.samples)
        if (dist(smp.s, s0) > flat_tol) return false;
    return true;
}

}  // namespace

ClassificationRecord classify(const Trajectory& traj, Family family, double parameter,
                              const RunConfig& cfg) {
    ClassificationRecord rec;
    rec.family = family;
    rec.parameter = parameter;
    rec.termination = traj.termination;

    switch (traj.termination) {
        case Termination::Escaped:
            rec.outcome = Outcome::BlowUp;
            rec.t_escape = traj.t_escape;
            return rec;
        case Termination::StepFailure:
            rec.outcome = Outcome::Inconclusive;
            rec.note = "integration step failure";
            return rec;
        case Termination::ReachedTMax:
            if (is_flat_trajectory(traj, cfg.flat_tol)) {
                rec.outcome = Outcome::Flat;
                return rec;
            }
            rec.outcome = Outcome::Inconclusive;
            rec.note = "no convergence or escape by t_max; increase t_max";
            return rec;
        case Termination::Converged:
            break;
    }

    rec.outcome = Outcome::ConvergesToNK;
    try {
        rec.fit = fit_decay(traj, cfg.fit_min_time, cfg.fit_fraction);
        rec.has_fit = true;
        rec.mu = rec.fit.mu;
        rec.nu = rec.fit.nu;
        rec.fitted_exponent = rec.fit.exponent;
    } catch (const std::invalid_argument& e) {
        rec.note = e.what();  // converged, but the horizon leaves no fit window
    }
    return rec;
}

ClassificationRecord classify_parameter(Family family, double parameter,
                                        const RunConfig& cfg, double t_max_override) {
    const double t_max = t_max_override > 0.0 ? t_max_override : cfg.t_max;
    const Trajectory traj = integrate_instanton(make_jet(family, parameter), cfg.t0,
                                                t_max, cfg.control(), cfg.events());
    return classify(traj, family, parameter, cfg);
}

std::vector<ClassificationRecord> scan_family(Family family, double from, double to,
                                              double step, const RunConfig& cfg) {
    if (!(step > 0.0) || !(to >= from))
        throw std::invalid_argument("scan_family: need from <= to and step > 0");
    const long n = std::lround((to - from) / step);
    std::vector<ClassificationRecord> records;
    records.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k <= n; ++k)
        records.push_back(classify_parameter(family, from + static_cast<double>(k) * step, cfg));
    return records;
}

namespace {

bool is_bounded_outcome(Outcome o, const char* who) {
    switch (o) {
        case Outcome::Flat:
        case Outcome::ConvergesToNK: return true;
        case Outcome::BlowUp: return false;
        case Outcome::Inconclusive:
            throw std::runtime_error(std::string(who) +
                                     ": inconclusive probe, increase boundary_t_max");
    }
    return false;
}

}  // namespace

BoundaryResult locate_boundary(Family family, double lo, double hi, double tol_param,
                               const RunConfig& cfg) {
    if (!(hi > lo) || !(tol_param > 0.0))
        throw std::invalid_argument("locate_boundary: bad bracket or tolerance");
    BoundaryResult res;
    auto probe = [&](double p) {
        const Outcome o = classify_parameter(family, p, cfg, cfg.boundary_t_max).outcome;
        res.probes.push_back({p, o});
        return o;
    };
    const bool lo_bounded = is_bounded_outcome(probe(lo), "locate_boundary");
    const bool hi_bounded = is_bounded_outcome(probe(hi), "locate_boundary");
    if (lo_bounded == hi_bounded)
        throw std::invalid_argument(
            "locate_boundary: bracket endpoints classify identically");
    while (hi - lo > tol_param) {
        const double mid = 0.5 * (lo + hi);
        if (is_bounded_outcome(probe(mid), "locate_boundary") == lo_bounded)
            lo = mid;
        else
            hi = mid;
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.gamma_crit = 0.5 * (lo + hi);
    return res;
}

InstantonState cone_line_solution(double t) {
    const double t2 = t * t;
    return InstantonState{2.0 * t2 / (1.0 + 3.0 * t2), 0.0};
}

InstantonState cone_line_image(double t, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("cone_line_image: k in {0,1,2}");
    ShiftedState g = to_shifted(cone_line_solution(t));
    for (int i = 0; i < k; ++i) g = rotate_cone(g);
    return from_shifted(g);
}

InstantonState cone_line_image_velocity(double t, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("cone_line_image_velocity: k in {0,1,2}");
    const double d = 1.0 + 3.0 * t * t;
    // derivative transforms by the linear parts of shift / rotation / unshift
    ShiftedState g{4.0 * t / (d * d), 0.0};
    for (int i = 0; i < k; ++i) g = rotate_cone(g);
    return InstantonState{g.g_plus, kSqrt3 * g.g_minus};
}

std::array<IndexTableEntry, 2> index_table() {
    return {IndexTableEntry{-4.0, -2.0, -1}, IndexTableEntry{-2.0, 0.0, +1}};
}

int index_lookup(double weight) {
    if (weight == -2.0)
        throw std::domain_error("index_lookup: weight -2 is critical, index undefined");
    for (const IndexTableEntry& e : index_table())
        if (weight > e.lo && weight < e.hi) return e.index;
    throw std::domain_error("index_lookup: weight outside (-4, 0)");
}

}  // namespace g2moduli
