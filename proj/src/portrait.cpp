#include "g2moduli/portrait.hpp"

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace g2moduli {

namespace {

constexpr double kPi = 3.141592653589793;

ShiftedState rk4_step(const ShiftedState& g, double dtau) {
    const ShiftedState k1 = rhs_autonomous(g);
    const ShiftedState k2 =
        rhs_autonomous({g.g_plus + 0.5 * dtau * k1.g_plus, g.g_minus + 0.5 * dtau * k1.g_minus});
    const ShiftedState k3 =
        rhs_autonomous({g.g_plus + 0.5 * dtau * k2.g_plus, g.g_minus + 0.5 * dtau * k2.g_minus});
    const ShiftedState k4 =
        rhs_autonomous({g.g_plus + dtau * k3.g_plus, g.g_minus + dtau * k3.g_minus});
    return ShiftedState{
        g.g_plus + dtau / 6.0 * (k1.g_plus + 2.0 * k2.g_plus + 2.0 * k3.g_plus + k4.g_plus),
        g.g_minus + dtau / 6.0 * (k1.g_minus + 2.0 * k2.g_minus + 2.0 * k3.g_minus + k4.g_minus)};
}

std::vector<ShiftedState> trace(ShiftedState g, double dtau, int steps, double bound) {
    std::vector<ShiftedState> line{g};
    for (int i = 0; i < steps; ++i) {
        g = rk4_step(g, dtau);
        if (!std::isfinite(g.g_plus) || !std::isfinite(g.g_minus) ||
            std::max(std::abs(g.g_plus), std::abs(g.g_minus)) > bound)
            break;
        line.push_back(g);
        bool at_rest = false;
        for (const CriticalPoint& cp : critical_points())
            if (dist(g, to_shifted(cp.s)) < 1e-4) at_rest = true;
        if (at_rest) break;
    }
    return line;
}

struct SvgMap {
    double lo_x, hi_x, lo_y, hi_y;
    double size = 640.0, pad = 20.0;

    double x(double gx) const { return pad + (gx - lo_x) / (hi_x - lo_x) * size; }
    double y(double gy) const { return pad + (hi_y - gy) / (hi_y - lo_y) * size; }
};

std::string svg_path(const std::vector<ShiftedState>& line, const SvgMap& map) {
    std::ostringstream ss;
    ss.precision(2);
    ss << std::fixed;
    for (std::size_t i = 0; i < line.size(); ++i)
        ss << (i == 0 ? "M" : " L") << map.x(line[i].g_plus) << ' ' << map.y(line[i].g_minus);
    return ss.str();
}

void svg_header(std::ostream& out, const SvgMap& map) {
    const double w = map.size + 2.0 * map.pad;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << ' ' << w
        << "\" width=\"" << w << "\" height=\"" << w << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::vector<FieldRow> field_rows(const PortraitConfig& pc) {
    std::vector<FieldRow> rows;
    rows.reserve(static_cast<std::size_t>(pc.grid_n) * static_cast<std::size_t>(pc.grid_n));
    const double w = pc.window;
    for (int i = 0; i < pc.grid_n; ++i) {
        for (int j = 0; j < pc.grid_n; ++j) {
            const double gp = -w + 2.0 * w * static_cast<double>(i) / (pc.grid_n - 1);
            const double gm = -w + 2.0 * w * static_cast<double>(j) / (pc.grid_n - 1);
            const ShiftedState v = rhs_autonomous({gp, gm});
            rows.push_back({gp, gm, v.g_plus, v.g_minus});
        }
    }
    return rows;
}

void emit_field_csv(std::ostream& out, const PortraitConfig& pc) {
    out.precision(17);
    out << "g_plus,g_minus,dg_plus,dg_minus\n";
    for (const FieldRow& r : field_rows(pc))
        out << r.g_plus << ',' << r.g_minus << ',' << r.dg_plus << ',' << r.dg_minus << '\n';
}

std::vector<std::vector<ShiftedState>> streamline_polylines(const PortraitConfig& pc) {
    std::vector<std::vector<ShiftedState>> lines;
    const double bound = 1.6 * pc.window;
    for (int k = 0; k < pc.streamline_seeds; ++k) {
        const double th = 2.0 * kPi * static_cast<double>(k) / pc.streamline_seeds;
        const ShiftedState seed{pc.seed_radius * pc.window * std::cos(th),
                                pc.seed_radius * pc.window * std::sin(th)};
        for (const double sign : {1.0, -1.0}) {
            auto line = trace(seed, sign * pc.streamline_dtau, pc.streamline_steps, bound);
            if (line.size() > 1) lines.push_back(std::move(line));
        }
    }
    return lines;
}

void emit_streamlines_csv(std::ostream& out, const PortraitConfig& pc) {
    out.precision(17);
    out << "id,step,g_plus,g_minus\n";
    const auto lines = streamline_polylines(pc);
    for (std::size_t id = 0; id < lines.size(); ++id)
        for (std::size_t s = 0; s < lines[id].size(); ++s)
            out << id << ',' << s << ',' << lines[id][s].g_plus << ','
                << lines[id][s].g_minus << '\n';
}

void emit_portrait_svg(std::ostream& out, const PortraitConfig& pc) {
    const SvgMap map{-pc.window, pc.window, -pc.window, pc.window};
    svg_header(out, map);
    out << "<line x1=\"" << map.x(-pc.window) << "\" y1=\"" << map.y(0) << "\" x2=\""
        << map.x(pc.window) << "\" y2=\"" << map.y(0)
        << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    out << "<line x1=\"" << map.x(0) << "\" y1=\"" << map.y(-pc.window) << "\" x2=\""
        << map.x(0) << "\" y2=\"" << map.y(pc.window)
        << "\" stroke=\"#ccc\" stroke-width=\"1\"/>\n";
    for (const auto& line : streamline_polylines(pc))
        out << "<path d=\"" << svg_path(line, map)
            << "\" fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1\"/>\n";
    for (const CriticalPoint& cp : critical_points()) {
        const ShiftedState g = to_shifted(cp.s);
        const char* color = cp.kind == CriticalKind::Flat ? "#cc3311" : "#228833";
        out << "<circle class=\"critical-point\" cx=\"" << map.x(g.g_plus) << "\" cy=\""
            << map.y(g.g_minus) << "\" r=\"5\" fill=\"" << color << "\"/>\n";
    }
    out << "</svg>\n";
}

namespace {

std::vector<Trajectory> fan_trajectories(const RunConfig& cfg) {
    std::vector<Trajectory> out;
    for (const double gp : cfg.portrait.fan_parameters)
        out.push_back(integrate_instanton(make_jet(Family::TPrime, gp), cfg.t0,
                                          cfg.portrait.fan_t_max, cfg.control(),
                                          cfg.events()));
    return out;
}

bool is_constant_run(const Trajectory& traj) {
    const InstantonState s0 = traj.samples.front().s;
    for (const TrajectorySample& s : traj.samples)
        if (dist(s.s, s0) > 1e-12) return false;
    return true;
}

}  // namespace

void emit_fan_csv(std::ostream& out, const RunConfig& cfg) {
    out.precision(17);
    out << "parameter,t,f_plus,f_minus\n";
    const auto trajs = fan_trajectories(cfg);
    for (std::size_t i = 0; i < trajs.size(); ++i)
        for (const TrajectorySample& s : trajs[i].samples)
            out << cfg.portrait.fan_parameters[i] << ',' << s.t << ',' << s.s.f_plus << ','
                << s.s.f_minus << '\n';
}

void emit_fan_svg(std::ostream& out, const RunConfig& cfg) {
    // unshifted window around the forward-invariant box (2/3,1)x(0,1)
    const SvgMap map{0.55, 1.15, -0.1, 1.15};
    svg_header(out, map);
    out << "<rect class=\"invariant-box\" x=\"" << map.x(2.0 / 3.0) << "\" y=\"" << map.y(1.0)
        << "\" width=\"" << map.x(1.0) - map.x(2.0 / 3.0) << "\" height=\""
        << map.y(0.0) - map.y(1.0)
        << "\" fill=\"#eef7ee\" stroke=\"#228833\" stroke-width=\"1\"/>\n";
    const auto trajs = fan_trajectories(cfg);
    for (std::size_t i = 0; i < trajs.size(); ++i) {
        if (is_constant_run(trajs[i])) {
            const InstantonState s = trajs[i].samples.front().s;
            out << "<circle class=\"fan-point\" cx=\"" << map.x(s.f_plus) << "\" cy=\""
                << map.y(s.f_minus) << "\" r=\"5\" fill=\"#cc3311\"/>\n";
            continue;
        }
        std::vector<ShiftedState> line;  // reuse the path helper's coordinates
        line.reserve(trajs[i].samples.size());
        for (const TrajectorySample& s : trajs[i].samples)
            line.push_back({s.s.f_plus, s.s.f_minus});
        out << "<path class=\"fan-line\" d=\"" << svg_path(line, map)
            << "\" fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1.2\"/>\n";
    }
    const InstantonState nk = critical_points()[3].s;
    out << "<circle class=\"critical-point\" cx=\"" << map.x(nk.f_plus) << "\" cy=\""
        << map.y(nk.f_minus) << "\" r=\"4\" fill=\"#228833\"/>\n";
    out << "</svg>\n";
}

PortraitPaths emit_portrait(const std::string& out_dir, const RunConfig& cfg) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    PortraitPaths paths;
    auto write = [&](const std::string& name, auto&& emitter) {
        const std::string path = (fs::path(out_dir) / name).string();
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path);
        emitter(out);
        return path;
    };
    paths.field_csv = write("field.csv",
                            [&](std::ostream& o) { emit_field_csv(o, cfg.portrait); });
    paths.streamlines_csv = write(
        "streamlines.csv", [&](std::ostream& o) { emit_streamlines_csv(o, cfg.portrait); });
    paths.portrait_svg = write("portrait.svg",
                               [&](std::ostream& o) { emit_portrait_svg(o, cfg.portrait); });
    paths.fan_csv = write("fan.csv", [&](std::ostream& o) { emit_fan_csv(o, cfg); });
    paths.fan_svg = write("fan.svg", [&](std::ostream& o) { emit_fan_svg(o, cfg); });
    return paths;
}

}  // namespace g2moduli
