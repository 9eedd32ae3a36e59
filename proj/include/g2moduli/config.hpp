#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2moduli/trajectory.hpp"

namespace g2moduli {

struct PortraitConfig {
    double window = 1.0;  // shifted-coordinate square [-window, window]^2
    int grid_n = 21;
    int streamline_seeds = 18;
    double seed_radius = 0.95;
    int streamline_steps = 600;
    double streamline_dtau = 0.02;
    std::vector<double> fan_parameters = {0.0, 0.25, 0.5, 0.75, 1.0};
    double fan_t_max = 300.0;
};

// every tunable lives here so runs are reproducible from one file
struct RunConfig {
    double t0 = 1e-2;           // series seed time; expansions hold for t <= 0.05
    double t_max = 1e3;
    double boundary_t_max = 2e3;  // bisection probes near-critical runs need longer
    double rtol = 1e-10;
    double atol_factor = 1e-2;  // atol = rtol * atol_factor
    double escape_threshold = 1e3;
    double convergence_radius = 1e-3;
    double convergence_min_time = 50.0;
    double flat_tol = 1e-12;
    double fit_min_time = 50.0;
    double fit_fraction = 0.1;  // fit window starts at max(fit_min_time, fraction*t_max)
    double quad_tol = 1e-12;
    double fd_step = 1e-5;
    double eps_band = 1e-9;  // tolerance band for region-exit counterexamples
    StepControl step;
    PortraitConfig portrait;

    IntegrationControl control() const;
    EventSpec events() const;
    void validate() const;  // throws std::invalid_argument
};

// JSON (de)serialisation; round-trips losslessly
std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

// path resolution: explicit argument, else $G2MODULI_CONFIG, else defaults
RunConfig load_config(const std::optional<std::string>& explicit_path);

void save_config(const RunConfig& cfg, const std::string& path);

}  // namespace g2moduli
