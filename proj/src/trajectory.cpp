#include "g2moduli/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "g2moduli/metric.hpp"

namespace g2moduli {

const char* termination_name(Termination term) {
    switch (term) {
        case Termination::ReachedTMax: return "ReachedTMax";
        case Termination::Converged: return "Converged";
        case Termination::Escaped: return "Escaped";
        case Termination::StepFailure: return "StepFailure";
    }
    return "unknown";
}

bool Region::contains(const InstantonState& s, double band) const {
    return s.f_plus > lo_plus - band && s.f_plus < hi_plus + band &&
           s.f_minus > lo_minus - band && s.f_minus < hi_minus + band;
}

Region region_R0() {
    Region r;
    r.name = "R0";
    r.lo_plus = 2.0 / 3.0;
    r.hi_plus = 1.0;
    r.lo_minus = 0.0;
    r.hi_minus = 1.0;
    return r;
}

Region region_Rinf() {
    Region r;
    r.name = "Rinf";
    r.lo_plus = 1.0;
    r.lo_minus = 1.0;
    return r;
}

Region region_H_plus() {
    Region r;
    r.name = "H+";
    r.lo_minus = 0.0;
    return r;
}

Region region_H_minus() {
    Region r;
    r.name = "H-";
    r.hi_minus = 0.0;
    return r;
}

Trajectory integrate_instanton(const SeriesJet& seed, double t0, double t_max,
                               const IntegrationControl& ctl, const EventSpec& events) {
    if (!(t0 > 0.0) || !(t_max > t0))
        throw std::invalid_argument("integrate_instanton: need 0 < t0 < t_max");
    if (!(events.escape_threshold > 10.0))
        throw std::invalid_argument(
            "integrate_instanton: escape threshold must clear the critical points");

    Trajectory traj;
    traj.seed = seed;
    traj.t0 = t0;

    const InstantonState s0 = seed.eval(t0);
    const double r0 = r_of_t(t0);
    std::array<double, 3> y{r0, s0.f_plus, s0.f_minus};
    traj.samples.push_back({t0, r0, s0});

    const InstantonState nk = critical_points()[3].s;

    auto rhs = [](double t, const std::array<double, 3>& v) {
        // clamped radicand: RK stages may probe a hair below the seed radius
        const double r = v[0];
        const double omr = r > 1.0 ? -std::expm1(-3.0 * std::log(r)) : 0.0;
        const double rdot = std::sqrt(std::max(0.0, omr));
        MetricSample m;
        m.t = t;
        m.r = r;
        m.A = (r / 3.0) * rdot;
        m.B = r / 1.7320508075688772;
        const InstantonState f = rhs_full(t, {v[1], v[2]}, m);
        return std::array<double, 3>{rdot, f.f_plus, f.f_minus};
    };

    bool escaped = false;
    auto observe = [&](double t, const std::array<double, 3>& v) {
        traj.samples.push_back({t, v[0], {v[1], v[2]}});
        if (std::max(std::abs(v[1]), std::abs(v[2])) > events.escape_threshold) {
            escaped = true;
            traj.t_escape = t;
            return false;
        }
        if (std::isnan(traj.t_converged) && t >= events.convergence_min_time &&
            dist({v[1], v[2]}, nk) < events.convergence_radius)
            traj.t_converged = t;
        return true;
    };

    const StepperStatus status = dopri5_integrate<3>(rhs, t0, y, t_max, ctl.rtol,
                                                     ctl.atol, ctl.step, observe,
                                                     &traj.stats);

    if (escaped) {
        traj.termination = Termination::Escaped;
    } else if (status == StepperStatus::ReachedEnd) {
        const bool in_ball = dist(traj.back().s, nk) < events.convergence_radius;
        traj.termination = (!std::isnan(traj.t_converged) && in_ball)
                               ? Termination::Converged
                               : Termination::ReachedTMax;
    } else {
        traj.termination = Termination::StepFailure;
    }

    traj.region_reports.reserve(events.watchers.size());
    for (const Region& w : events.watchers)
        traj.region_reports.push_back(check_region_invariance(traj, w, events.eps_band));
    return traj;
}

RegionReport check_region_invariance(const Trajectory& traj, const Region& region,
                                     double eps_band) {
    RegionReport rep;
    rep.name = region.name;
    for (long i = 0; i < static_cast<long>(traj.samples.size()); ++i) {
        const InstantonState& s = traj.samples[static_cast<std::size_t>(i)].s;
        if (!rep.entered) {
            if (region.contains(s, 0.0)) {
                rep.entered = true;
                rep.first_entry_index = i;
                rep.first_entry_time = traj.samples[static_cast<std::size_t>(i)].t;
            }
        } else if (!region.contains(s, eps_band)) {
            rep.exited_after_entry = true;
            rep.exit_index = i;
            rep.exit_time = traj.samples[static_cast<std::size_t>(i)].t;
            break;
        }
    }
    return rep;
}

}  // namespace g2moduli
