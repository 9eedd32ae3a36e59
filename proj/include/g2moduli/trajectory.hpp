#pragma once

#include <limits>
#include <string>
#include <vector>

#include "g2moduli/dopri5.hpp"
#include "g2moduli/local_solutions.hpp"

namespace g2moduli {

struct TrajectorySample {
    double t;
    double r;
    InstantonState s;
};

enum class Termination { ReachedTMax, Converged, Escaped, StepFailure };

const char* termination_name(Termination term);

// axis-aligned open region in (f_plus, f_minus); infinities allowed
struct Region {
    std::string name;
    double lo_plus = -std::numeric_limits<double>::infinity();
    double hi_plus = std::numeric_limits<double>::infinity();
    double lo_minus = -std::numeric_limits<double>::infinity();
    double hi_minus = std::numeric_limits<double>::infinity();

    // band > 0 inflates the region: "not outside beyond the tolerance band"
    bool contains(const InstantonState& s, double band = 0.0) const;
};

Region region_R0();       // (2/3,1) x (0,1), forward invariant, converges to NK
Region region_Rinf();     // (1,inf) x (1,inf), forward invariant, blow-up
Region region_H_plus();   // f_minus > 0
Region region_H_minus();  // f_minus < 0

struct RegionReport {
    std::string name;
    bool entered = false;
    long first_entry_index = -1;
    double first_entry_time = std::numeric_limits<double>::quiet_NaN();
    bool exited_after_entry = false;
    long exit_index = -1;
    double exit_time = std::numeric_limits<double>::quiet_NaN();
};

struct EventSpec {
    double escape_threshold = 1e3;     // stop when max(|f+|,|f-|) exceeds this
    double convergence_radius = 1e-3;  // ball around the nearly-Kahler point
    double convergence_min_time = 50;  // guards against early transits
    double eps_band = 1e-9;            // grazing tolerance for region-exit reports
    std::vector<Region> watchers;
};

struct IntegrationControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    StepControl step;
};

struct Trajectory {
    SeriesJet seed;
    double t0 = 0.0;
    std::vector<TrajectorySample> samples;
    Termination termination = Termination::StepFailure;
    double t_escape = std::numeric_limits<double>::quiet_NaN();
    double t_converged = std::numeric_limits<double>::quiet_NaN();  // first time in ball
    StepperStats stats;
    std::vector<RegionReport> region_reports;

    const TrajectorySample& back() const { return samples.back(); }
};

// integrate the coupled system (r, f_plus, f_minus) from a series seed at t0.
// The convergence event latches but does not stop the run (the decay tail is
// needed downstream); Converged is reported when the run reaches t_max inside
// the ball with the latch set.
Trajectory integrate_instanton(const SeriesJet& seed, double t0, double t_max,
                               const IntegrationControl& ctl, const EventSpec& events);

RegionReport check_region_invariance(const Trajectory& traj, const Region& region,
                                     double eps_band);

}  // namespace g2moduli
