#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "g2moduli/classify.hpp"

namespace g2moduli {

// CSV writers; headers are part of the documented output contract
void write_metric_csv(std::ostream& out, double r_min, double r_max, int samples,
                      double quad_tol);  // r,t,A,B,dr_dt
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);  // t,r,f_plus,f_minus

nlohmann::json record_to_json(const ClassificationRecord& rec);
nlohmann::json scan_to_json(const std::vector<ClassificationRecord>& records);
nlohmann::json boundary_to_json(const BoundaryResult& res, Family family, double tol);

}  // namespace g2moduli
