#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "g2moduli/config.hpp"

namespace g2moduli {

// sampled vector field of the log-time conical system, shifted coordinates
struct FieldRow {
    double g_plus, g_minus, dg_plus, dg_minus;
};

std::vector<FieldRow> field_rows(const PortraitConfig& pc);

void emit_field_csv(std::ostream& out, const PortraitConfig& pc);

// fixed-step RK4 streamlines seeded on a ring, both time directions
std::vector<std::vector<ShiftedState>> streamline_polylines(const PortraitConfig& pc);

void emit_streamlines_csv(std::ostream& out, const PortraitConfig& pc);

// phase portrait with the four critical points marked (circle.critical-point)
void emit_portrait_svg(std::ostream& out, const PortraitConfig& pc);

// overlay of integrated family members on the forward-invariant box; constant
// members render as circle.fan-point
void emit_fan_csv(std::ostream& out, const RunConfig& cfg);
void emit_fan_svg(std::ostream& out, const RunConfig& cfg);

struct PortraitPaths {
    std::string field_csv, streamlines_csv, portrait_svg, fan_csv, fan_svg;
};

PortraitPaths emit_portrait(const std::string& out_dir, const RunConfig& cfg);

}  // namespace g2moduli
