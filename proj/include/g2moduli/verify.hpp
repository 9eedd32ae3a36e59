#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "g2moduli/classify.hpp"

namespace g2moduli {

struct CheckResult {
    std::string id;
    bool pass = false;
    double value = 0.0;      // measured quantity (residual, slope, ...)
    double threshold = 0.0;  // the bound it was held against
    std::string detail;
};

// function types injectable for mutation testing of the checks themselves
using AutonomousRhs = std::function<InstantonState(const InstantonState&)>;
using ConeRhs = std::function<InstantonState(double, const InstantonState&)>;

// refines sign-change cells of the planar field over [-2,2]^2; passes when the
// zero set clusters exactly at the four known critical points
CheckResult check_zero_set(const AutonomousRhs& rhs);

// straight-line solution and its two rotated images against the conical system
CheckResult check_cone_line(const ConeRhs& rhs);

// the full invariant suite (residuals, symmetries, invariant regions, decay
// rates, classification, boundary reproduction, report schemas)
std::vector<CheckResult> run_verify_suite(const RunConfig& cfg);

nlohmann::json verify_to_json(const std::vector<CheckResult>& checks);

}  // namespace g2moduli
