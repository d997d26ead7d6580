#pragma once

#include <array>
#include <string>

#include "pdg/sim.hpp"

namespace pdg {

/// On-disk scenario document (JSON). Defaults are filled at load time:
/// dt = 1e-3 L, capture_eps = 1e-3 L, t_max = 3 L, densify = 2048.
struct Scenario {
    int version = 1;

    // perimeter: either explicit vertices or a named shape
    std::vector<Vec2> vertices;
    std::string shape;  // "circle" | "piecewise-ellipse" | "" (explicit)
    double radius = 1.0;
    std::array<std::array<double, 2>, 4> semi_axes = kDefaultEllipseAxes;
    std::size_t densify = 2048;

    double nu = 0.5;
    std::vector<double> defenders;
    std::vector<Vec2> intruders;
    std::string defender_policy = "solo";
    std::string intruder_policy = "solo";
    double dt = -1.0;
    double t_max = -1.0;
    double capture_eps = -1.0;
    int reassign_period = 10;
    std::uint64_t seed = 0;
    std::vector<double> scripted_omegas;
    std::vector<Vec2> scripted_velocities;
};

DefenderPolicy parse_defender_policy(const std::string& name);
IntruderPolicy parse_intruder_policy(const std::string& name);
std::string to_string(DefenderPolicy p);
std::string to_string(IntruderPolicy p);

/// Parse/serialize; parse errors carry the offending field name.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& sc);

Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& sc);

/// Builds the perimeter and validates every field (field-precise messages).
PerimeterCurve build_scenario_curve(const Scenario& sc);
SimConfig build_sim_config(const Scenario& sc);

}  // namespace pdg
