#include "g2moduli/reports.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "g2moduli/metric.hpp"

namespace g2moduli {

using nlohmann::json;

namespace {

json finite_or_null(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

}  // namespace

void write_metric_csv(std::ostream& out, double r_min, double r_max, int samples,
                      double quad_tol) {
    if (!(r_min >= 1.0) || !(r_max > r_min) || samples < 2)
        throw std::invalid_argument("write_metric_csv: need 1 <= r_min < r_max, samples >= 2");
    out.precision(17);
    out << "r,t,A,B,dr_dt\n";
    for (int i = 0; i < samples; ++i) {
        const double r =
            r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(samples - 1);
        const MetricSample m = metric_at_r(r);
        out << r << ',' << t_of_r(r, quad_tol) << ',' << m.A << ',' << m.B << ','
            << dr_dt(r) << '\n';
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out.precision(17);
    out << "t,r,f_plus,f_minus\n";
    for (const TrajectorySample& s : traj.samples)
        out << s.t << ',' << s.r << ',' << s.s.f_plus << ',' << s.s.f_minus << '\n';
}

json record_to_json(const ClassificationRecord& rec) {
    return json{{"family", family_name(rec.family)},
                {"parameter", rec.parameter},
                {"outcome", outcome_name(rec.outcome)},
                {"mu", finite_or_null(rec.mu)},
                {"nu", finite_or_null(rec.nu)},
                {"fitted_exponent", finite_or_null(rec.fitted_exponent)},
                {"t_escape", finite_or_null(rec.t_escape)}};
}

json scan_to_json(const std::vector<ClassificationRecord>& records) {
    json arr = json::array();
    for (const ClassificationRecord& rec : records) arr.push_back(record_to_json(rec));
    return arr;
}

json boundary_to_json(const BoundaryResult& res, Family family, double tol) {
    json probes = json::array();
    for (const BoundaryProbe& p : res.probes)
        probes.push_back(json{{"parameter", p.parameter}, {"outcome", outcome_name(p.outcome)}});
    return json{{"family", family_name(family)},
                {"gamma_crit", res.gamma_crit},
                {"bracket", json::array({res.bracket_lo, res.bracket_hi})},
                {"tol", tol},
                {"probes", probes}};
}

}  // namespace g2moduli
