#pragma once

#include <ostream>
#include <string>

#include "pdg/scenario.hpp"

namespace pdg {

/// CSV "x,y,V" of the 1v1 value over a grid spanning the shape's bounding
/// box inflated by `margin` (fraction of the larger box side).
void write_value_grid_csv(std::ostream& out, const PerimeterCurve& c, ArcPos s_d, double nu,
                          int grid_n, double margin = 0.75);
/// Same for the 2v1 value of an ordered pair.
void write_pair_value_grid_csv(std::ostream& out, const PerimeterCurve& c, ArcPos s_d1,
                               ArcPos s_d2, double nu, int grid_n, double margin = 0.75);

void write_polyline_csv(std::ostream& out, const std::vector<Vec2>& pts);
void write_polyline_svg(std::ostream& out, const PerimeterCurve& c, const std::vector<Vec2>& pts);

/// One JSON line per step: t, positions, controls, engagement values.
void write_trace_jsonl(std::ostream& out, const SimTrace& trace);
/// Summary document: outcome, score, events, recorded bound.
std::string trace_summary_json(const SimTrace& trace, const SimConfig& cfg);

/// Scene snapshot: perimeter, defenders, intruders, breach-point stars and
/// assignment edges (dash-dotted 1v1, solid 2v1).
void write_frame_svg(std::ostream& out, const PerimeterCurve& c,
                     const std::vector<ArcPos>& defender_arcs,
                     const std::vector<Vec2>& intruder_positions,
                     const std::vector<IntruderStatus>& status, const Assignment& assignment,
                     const std::vector<ArcPos>& breach_stars);

}  // namespace pdg
