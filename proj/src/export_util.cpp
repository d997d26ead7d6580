#include "pdg/export_util.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pdg/two_vs_one.hpp"

namespace pdg {

using nlohmann::json;

namespace {

struct Box {
    double min_x, min_y, max_x, max_y;
};

Box inflated_bbox(const PerimeterCurve& c, double margin) {
    Box b{1e300, 1e300, -1e300, -1e300};
    for (const Vec2& v : c.vertices()) {
        b.min_x = std::min(b.min_x, v.x);
        b.min_y = std::min(b.min_y, v.y);
        b.max_x = std::max(b.max_x, v.x);
        b.max_y = std::max(b.max_y, v.y);
    }
    double pad = margin * std::max(b.max_x - b.min_x, b.max_y - b.min_y);
    return {b.min_x - pad, b.min_y - pad, b.max_x + pad, b.max_y + pad};
}

// map world coordinates to a fixed 800-wide SVG canvas, y flipped
struct SvgMapper {
    Box box;
    double scale;
    double height;
    explicit SvgMapper(const Box& b)
        : box(b),
          scale(800.0 / (b.max_x - b.min_x)),
          height((b.max_y - b.min_y) * scale) {}
    double x(double wx) const { return (wx - box.min_x) * scale; }
    double y(double wy) const { return height - (wy - box.min_y) * scale; }
};

void svg_header(std::ostream& out, const SvgMapper& m) {
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" << m.height
        << "\" viewBox=\"0 0 800 " << m.height << "\">\n";
}

void svg_polygon(std::ostream& out, const SvgMapper& m, const PerimeterCurve& c) {
    out << "<polygon points=\"";
    for (const Vec2& v : c.vertices()) out << m.x(v.x) << "," << m.y(v.y) << " ";
    out << "\" fill=\"#e8f4e8\" stroke=\"#2d6a2d\" stroke-width=\"2\"/>\n";
}

}  // namespace

void write_value_grid_csv(std::ostream& out, const PerimeterCurve& c, ArcPos s_d, double nu,
                          int grid_n, double margin) {
    Box b = inflated_bbox(c, margin);
    out << "x,y,V\n";
    for (int iy = 0; iy < grid_n; ++iy)
        for (int ix = 0; ix < grid_n; ++ix) {
            Vec2 p{b.min_x + (b.max_x - b.min_x) * ix / (grid_n - 1),
                   b.min_y + (b.max_y - b.min_y) * iy / (grid_n - 1)};
            if (!c.is_exterior(p)) continue;
            out << p.x << "," << p.y << "," << evaluate_solo(c, s_d, p, nu).value << "\n";
        }
}

void write_pair_value_grid_csv(std::ostream& out, const PerimeterCurve& c, ArcPos s_d1,
                               ArcPos s_d2, double nu, int grid_n, double margin) {
    Box b = inflated_bbox(c, margin);
    out << "x,y,V\n";
    for (int iy = 0; iy < grid_n; ++iy)
        for (int ix = 0; ix < grid_n; ++ix) {
            Vec2 p{b.min_x + (b.max_x - b.min_x) * ix / (grid_n - 1),
                   b.min_y + (b.max_y - b.min_y) * iy / (grid_n - 1)};
            if (!c.is_exterior(p)) continue;
            out << p.x << "," << p.y << "," << evaluate_duo(c, s_d1, s_d2, p, nu).value << "\n";
        }
}

void write_polyline_csv(std::ostream& out, const std::vector<Vec2>& pts) {
    out << "x,y\n";
    for (const Vec2& p : pts) out << p.x << "," << p.y << "\n";
}

void write_polyline_svg(std::ostream& out, const PerimeterCurve& c, const std::vector<Vec2>& pts) {
    Box b = inflated_bbox(c, 0.75);
    SvgMapper m(b);
    svg_header(out, m);
    svg_polygon(out, m, c);
    out << "<polyline points=\"";
    for (const Vec2& p : pts) out << m.x(p.x) << "," << m.y(p.y) << " ";
    out << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n</svg>\n";
}

void write_trace_jsonl(std::ostream& out, const SimTrace& trace) {
    for (const StepRecord& rec : trace.steps) {
        json j;
        j["t"] = rec.t;
        j["defenders"] = rec.defender_arcs;
        json ints = json::array();
        for (const Vec2& p : rec.intruder_positions) ints.push_back({p.x, p.y});
        j["intruders"] = ints;
        j["omegas"] = rec.defender_omegas;
        json vels = json::array();
        for (const Vec2& v : rec.intruder_velocities) vels.push_back({v.x, v.y});
        j["velocities"] = vels;
        json vals = json::array();
        for (double v : rec.engagement_values)
            vals.push_back(std::isnan(v) ? json(nullptr) : json(v));
        j["values"] = vals;
        out << j.dump() << "\n";
    }
}

std::string trace_summary_json(const SimTrace& trace, const SimConfig& cfg) {
    json j;
    j["score"] = trace.score;
    j["t_end"] = trace.t_end;
    j["bound_at_start"] = trace.bound_at_start;
    j["defender_policy"] = to_string(cfg.defender_policy);
    j["intruder_policy"] = to_string(cfg.intruder_policy);
    json status = json::array();
    for (IntruderStatus s : trace.final_status)
        status.push_back(s == IntruderStatus::Alive
                             ? "alive"
                             : (s == IntruderStatus::Breached ? "breached" : "captured"));
    j["intruder_status"] = status;
    json events = json::array();
    for (const SimEvent& e : trace.events) {
        json je;
        je["t"] = e.t;
        je["kind"] = e.kind == SimEvent::Kind::Breach
                         ? "breach"
                         : (e.kind == SimEvent::Kind::Capture ? "capture" : "reassign");
        if (e.intruder >= 0) je["intruder"] = e.intruder;
        if (e.defender_a >= 0) je["defender_a"] = e.defender_a;
        if (e.defender_b >= 0) je["defender_b"] = e.defender_b;
        if (e.kind == SimEvent::Kind::Breach) {
            je["s_breach"] = e.s_breach;
            je["safe_distance"] = e.safe_distance;
        }
        events.push_back(je);
    }
    j["events"] = events;
    return j.dump(2);
}

void write_frame_svg(std::ostream& out, const PerimeterCurve& c,
                     const std::vector<ArcPos>& defender_arcs,
                     const std::vector<Vec2>& intruder_positions,
                     const std::vector<IntruderStatus>& status, const Assignment& assignment,
                     const std::vector<ArcPos>& breach_stars) {
    Box b = inflated_bbox(c, 0.4);
    SvgMapper m(b);
    svg_header(out, m);
    svg_polygon(out, m, c);

    auto agent_xy = [&](int d) { return c.point_at(defender_arcs[static_cast<std::size_t>(d)]); };
    for (const AssignmentEdge& e : assignment.edges) {
        if (e.intruder < 0 ||
            status[static_cast<std::size_t>(e.intruder)] != IntruderStatus::Alive)
            continue;
        Vec2 xi = intruder_positions[static_cast<std::size_t>(e.intruder)];
        const char* dash = e.is_pair() ? "" : " stroke-dasharray=\"8 3 2 3\"";
        for (int d : {e.defender_a, e.defender_b}) {
            if (d < 0) continue;
            Vec2 xd = agent_xy(d);
            out << "<line x1=\"" << m.x(xd.x) << "\" y1=\"" << m.y(xd.y) << "\" x2=\""
                << m.x(xi.x) << "\" y2=\"" << m.y(xi.y) << "\" stroke=\"#2c5aa0\" stroke-width=\""
                << (e.is_pair() ? 2.0 : 1.2) << "\"" << dash << "/>\n";
        }
    }
    for (ArcPos s : breach_stars) {
        Vec2 p = c.point_at(s);
        out << "<text x=\"" << m.x(p.x) << "\" y=\"" << m.y(p.y)
            << "\" font-size=\"18\" fill=\"#d4a017\" text-anchor=\"middle\">&#9733;</text>\n";
    }
    for (std::size_t d = 0; d < defender_arcs.size(); ++d) {
        Vec2 p = c.point_at(defender_arcs[d]);
        out << "<circle cx=\"" << m.x(p.x) << "\" cy=\"" << m.y(p.y)
            << "\" r=\"6\" fill=\"#2c5aa0\"/>\n";
    }
    for (std::size_t i = 0; i < intruder_positions.size(); ++i) {
        if (status[i] != IntruderStatus::Alive) continue;
        Vec2 p = intruder_positions[i];
        out << "<circle cx=\"" << m.x(p.x) << "\" cy=\"" << m.y(p.y)
            << "\" r=\"5\" fill=\"#c0392b\"/>\n";
    }
    out << "</svg>\n";
}

}  // namespace pdg
