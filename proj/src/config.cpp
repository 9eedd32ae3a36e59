#include "g2moduli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace g2moduli {

using nlohmann::json;

IntegrationControl RunConfig::control() const {
    return IntegrationControl{rtol, rtol * atol_factor, step};
}

EventSpec RunConfig::events() const {
    EventSpec ev;
    ev.escape_threshold = escape_threshold;
    ev.convergence_radius = convergence_radius;
    ev.convergence_min_time = convergence_min_time;
    ev.eps_band = eps_band;
    return ev;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("config: " + msg); };
    if (!(t0 > 0.0 && t0 <= 0.05)) fail("t0 must lie in (0, 0.05], the series validity window");
    if (!(t_max > t0)) fail("t_max must exceed t0");
    if (!(boundary_t_max >= t_max)) fail("boundary_t_max must be >= t_max");
    if (!(rtol > 0.0 && rtol < 1e-2)) fail("rtol out of range");
    if (!(atol_factor > 0.0)) fail("atol_factor must be positive");
    if (!(escape_threshold > 10.0)) fail("escape_threshold must clear the critical points by 10x");
    if (!(convergence_radius > 0.0 && convergence_radius < 0.1)) fail("convergence_radius out of range");
    if (!(fit_min_time >= convergence_min_time)) fail("fit window must not start before the convergence guard");
    if (!(fit_fraction > 0.0 && fit_fraction <= 0.1)) fail("fit_fraction out of range");
    if (!(quad_tol > 0.0)) fail("quad_tol must be positive");
    if (!(fd_step > 0.0)) fail("fd_step must be positive");
    if (!(eps_band >= 0.0)) fail("eps_band must be nonnegative");
    if (!(step.max_step_fraction > 0.0 && step.max_step_fraction < 0.05))
        fail("max_step_fraction must stay below 0.05 to keep >= 50 samples per decade");
    if (portrait.grid_n < 2 || portrait.streamline_seeds < 1 || portrait.streamline_steps < 1)
        fail("portrait grid parameters out of range");
}

namespace {

json to_json(const RunConfig& c) {
    return json{
        {"t0", c.t0},
        {"t_max", c.t_max},
        {"boundary_t_max", c.boundary_t_max},
        {"rtol", c.rtol},
        {"atol_factor", c.atol_factor},
        {"escape_threshold", c.escape_threshold},
        {"convergence_radius", c.convergence_radius},
        {"convergence_min_time", c.convergence_min_time},
        {"flat_tol", c.flat_tol},
        {"fit_min_time", c.fit_min_time},
        {"fit_fraction", c.fit_fraction},
        {"quad_tol", c.quad_tol},
        {"fd_step", c.fd_step},
        {"eps_band", c.eps_band},
        {"step",
         {{"safety", c.step.safety},
          {"alpha", c.step.alpha},
          {"beta", c.step.beta},
          {"fac_min", c.step.fac_min},
          {"fac_max", c.step.fac_max},
          {"max_step_fraction", c.step.max_step_fraction},
          {"initial_step_fraction", c.step.initial_step_fraction},
          {"max_steps", c.step.max_steps}}},
        {"portrait",
         {{"window", c.portrait.window},
          {"grid_n", c.portrait.grid_n},
          {"streamline_seeds", c.portrait.streamline_seeds},
          {"seed_radius", c.portrait.seed_radius},
          {"streamline_steps", c.portrait.streamline_steps},
          {"streamline_dtau", c.portrait.streamline_dtau},
          {"fan_parameters", c.portrait.fan_parameters},
          {"fan_t_max", c.portrait.fan_t_max}}}};
}

void get_if_present(const json& j, const char* key, double& out) {
    if (j.contains(key)) out = j.at(key).get<double>();
}
void get_if_present(const json& j, const char* key, int& out) {
    if (j.contains(key)) out = j.at(key).get<int>();
}
void get_if_present(const json& j, const char* key, long& out) {
    if (j.contains(key)) out = j.at(key).get<long>();
}

RunConfig from_json(const json& j) {
    RunConfig c;
    get_if_present(j, "t0", c.t0);
    get_if_present(j, "t_max", c.t_max);
    get_if_present(j, "boundary_t_max", c.boundary_t_max);
    get_if_present(j, "rtol", c.rtol);
    get_if_present(j, "atol_factor", c.atol_factor);
    get_if_present(j, "escape_threshold", c.escape_threshold);
    get_if_present(j, "convergence_radius", c.convergence_radius);
    get_if_present(j, "convergence_min_time", c.convergence_min_time);
    get_if_present(j, "flat_tol", c.flat_tol);
    get_if_present(j, "fit_min_time", c.fit_min_time);
    get_if_present(j, "fit_fraction", c.fit_fraction);
    get_if_present(j, "quad_tol", c.quad_tol);
    get_if_present(j, "fd_step", c.fd_step);
    get_if_present(j, "eps_band", c.eps_band);
    if (j.contains("step")) {
        const json& s = j.at("step");
        get_if_present(s, "safety", c.step.safety);
        get_if_present(s, "alpha", c.step.alpha);
        get_if_present(s, "beta", c.step.beta);
        get_if_present(s, "fac_min", c.step.fac_min);
        get_if_present(s, "fac_max", c.step.fac_max);
        get_if_present(s, "max_step_fraction", c.step.max_step_fraction);
        get_if_present(s, "initial_step_fraction", c.step.initial_step_fraction);
        get_if_present(s, "max_steps", c.step.max_steps);
    }
    if (j.contains("portrait")) {
        const json& p = j.at("portrait");
        get_if_present(p, "window", c.portrait.window);
        get_if_present(p, "grid_n", c.portrait.grid_n);
        get_if_present(p, "streamline_seeds", c.portrait.streamline_seeds);
        get_if_present(p, "seed_radius", c.portrait.seed_radius);
        get_if_present(p, "streamline_steps", c.portrait.streamline_steps);
        get_if_present(p, "streamline_dtau", c.portrait.streamline_dtau);
        if (p.contains("fan_parameters"))
            c.portrait.fan_parameters = p.at("fan_parameters").get<std::vector<double>>();
        get_if_present(p, "fan_t_max", c.portrait.fan_t_max);
    }
    return c;
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
    return to_json(cfg).dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
    RunConfig cfg = from_json(json::parse(text));
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::optional<std::string>& explicit_path) {
    std::string path;
    if (explicit_path) {
        path = *explicit_path;
    } else if (const char* env = std::getenv("G2MODULI_CONFIG")) {
        path = env;
    } else {
        return RunConfig{};
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

void save_config(const RunConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write config file: " + path);
    out << config_to_json(cfg);
}

}  // namespace g2moduli
