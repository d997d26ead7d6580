#include "pdg/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pdg {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& why) {
    throw std::invalid_argument("scenario field '" + field + "': " + why);
}

std::vector<Vec2> parse_points(const json& arr, const std::string& field) {
    if (!arr.is_array()) field_error(field, "expected an array of [x, y] pairs");
    std::vector<Vec2> out;
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 2) field_error(field, "each entry must be [x, y]");
        out.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    return out;
}

json points_json(const std::vector<Vec2>& pts) {
    json arr = json::array();
    for (const Vec2& p : pts) arr.push_back({p.x, p.y});
    return arr;
}

}  // namespace

DefenderPolicy parse_defender_policy(const std::string& name) {
    if (name == "mm") return DefenderPolicy::MaxMatching;
    if (name == "mis") return DefenderPolicy::MaxIndependentSet;
    if (name == "lgr") return DefenderPolicy::LocalGameRegion;
    if (name == "solo") return DefenderPolicy::Solo;
    if (name == "duo") return DefenderPolicy::Duo;
    if (name == "stationary") return DefenderPolicy::Stationary;
    if (name == "cw") return DefenderPolicy::Clockwise;
    if (name == "random") return DefenderPolicy::RandomTurn;
    if (name == "scripted") return DefenderPolicy::Scripted;
    field_error("defender_policy", "unknown policy '" + name +
                                       "' (mm|mis|lgr|solo|duo|stationary|cw|random|scripted)");
}

IntruderPolicy parse_intruder_policy(const std::string& name) {
    if (name == "greedy") return IntruderPolicy::GreedyTeam;
    if (name == "solo") return IntruderPolicy::Solo;
    if (name == "closest-point") return IntruderPolicy::ClosestPoint;
    if (name == "tangent-point") return IntruderPolicy::TangentPoint;
    if (name == "random") return IntruderPolicy::RandomHeading;
    if (name == "scripted") return IntruderPolicy::Scripted;
    field_error("intruder_policy", "unknown policy '" + name +
                                       "' (greedy|solo|closest-point|tangent-point|random|scripted)");
}

std::string to_string(DefenderPolicy p) {
    switch (p) {
        case DefenderPolicy::MaxMatching: return "mm";
        case DefenderPolicy::MaxIndependentSet: return "mis";
        case DefenderPolicy::LocalGameRegion: return "lgr";
        case DefenderPolicy::Solo: return "solo";
        case DefenderPolicy::Duo: return "duo";
        case DefenderPolicy::Stationary: return "stationary";
        case DefenderPolicy::Clockwise: return "cw";
        case DefenderPolicy::RandomTurn: return "random";
        case DefenderPolicy::Scripted: return "scripted";
    }
    return "solo";
}

std::string to_string(IntruderPolicy p) {
    switch (p) {
        case IntruderPolicy::GreedyTeam: return "greedy";
        case IntruderPolicy::Solo: return "solo";
        case IntruderPolicy::ClosestPoint: return "closest-point";
        case IntruderPolicy::TangentPoint: return "tangent-point";
        case IntruderPolicy::RandomHeading: return "random";
        case IntruderPolicy::Scripted: return "scripted";
    }
    return "solo";
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario: invalid JSON: ") + e.what());
    }
    Scenario sc;
    sc.version = j.value("version", 1);

    if (!j.contains("perimeter")) field_error("perimeter", "missing");
    const json& per = j["perimeter"];
    if (per.contains("vertices")) {
        sc.vertices = parse_points(per["vertices"], "perimeter.vertices");
    } else if (per.contains("shape")) {
        sc.shape = per["shape"].get<std::string>();
        if (sc.shape == "circle") {
            sc.radius = per.value("radius", 1.0);
        } else if (sc.shape == "piecewise-ellipse") {
            if (per.contains("semi_axes")) {
                const json& ax = per["semi_axes"];
                if (!ax.is_array() || ax.size() != 4)
                    field_error("perimeter.semi_axes", "expected four [a, b] pairs");
                for (std::size_t q = 0; q < 4; ++q) {
                    sc.semi_axes[q][0] = ax[q][0].get<double>();
                    sc.semi_axes[q][1] = ax[q][1].get<double>();
                }
            }
        } else {
            field_error("perimeter.shape", "unknown shape '" + sc.shape +
                                               "' (circle|piecewise-ellipse)");
        }
        sc.densify = per.value("n", std::size_t{2048});
    } else {
        field_error("perimeter", "needs either 'vertices' or 'shape'");
    }

    if (!j.contains("nu")) field_error("nu", "missing");
    sc.nu = j["nu"].get<double>();
    if (j.contains("defenders")) sc.defenders = j["defenders"].get<std::vector<double>>();
    if (j.contains("intruders")) sc.intruders = parse_points(j["intruders"], "intruders");
    sc.defender_policy = j.value("defender_policy", std::string("solo"));
    sc.intruder_policy = j.value("intruder_policy", std::string("solo"));
    sc.dt = j.value("dt", -1.0);
    sc.t_max = j.value("t_max", -1.0);
    sc.capture_eps = j.value("capture_eps", -1.0);
    sc.reassign_period = j.value("reassign_period", 10);
    sc.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("scripted_omegas"))
        sc.scripted_omegas = j["scripted_omegas"].get<std::vector<double>>();
    if (j.contains("scripted_velocities"))
        sc.scripted_velocities = parse_points(j["scripted_velocities"], "scripted_velocities");
    return sc;
}

std::string scenario_to_json(const Scenario& sc) {
    json j;
    j["version"] = sc.version;
    json per;
    if (!sc.vertices.empty()) {
        per["vertices"] = points_json(sc.vertices);
    } else {
        per["shape"] = sc.shape;
        if (sc.shape == "circle") per["radius"] = sc.radius;
        if (sc.shape == "piecewise-ellipse") {
            json ax = json::array();
            for (const auto& q : sc.semi_axes) ax.push_back({q[0], q[1]});
            per["semi_axes"] = ax;
        }
        per["n"] = sc.densify;
    }
    j["perimeter"] = per;
    j["nu"] = sc.nu;
    j["defenders"] = sc.defenders;
    j["intruders"] = points_json(sc.intruders);
    j["defender_policy"] = sc.defender_policy;
    j["intruder_policy"] = sc.intruder_policy;
    if (sc.dt > 0) j["dt"] = sc.dt;
    if (sc.t_max > 0) j["t_max"] = sc.t_max;
    if (sc.capture_eps > 0) j["capture_eps"] = sc.capture_eps;
    j["reassign_period"] = sc.reassign_period;
    j["seed"] = sc.seed;
    if (!sc.scripted_omegas.empty()) j["scripted_omegas"] = sc.scripted_omegas;
    if (!sc.scripted_velocities.empty())
        j["scripted_velocities"] = points_json(sc.scripted_velocities);
    return j.dump(2);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json(ss.str());
}

void save_scenario(const std::string& path, const Scenario& sc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json(sc) << "\n";
}

PerimeterCurve build_scenario_curve(const Scenario& sc) {
    if (!sc.vertices.empty()) return build_perimeter(sc.vertices);
    if (sc.shape == "circle") {
        if (sc.radius <= 0.0) field_error("perimeter.radius", "must be positive");
        return make_circle(sc.radius, sc.densify);
    }
    if (sc.shape == "piecewise-ellipse") return make_piecewise_ellipse(sc.semi_axes, sc.densify);
    field_error("perimeter", "needs either 'vertices' or a known 'shape'");
}

SimConfig build_sim_config(const Scenario& sc) {
    if (!(sc.nu > 0.0) || sc.nu > 1.0) field_error("nu", "must be in (0,1]");
    SimConfig cfg;
    cfg.curve = build_scenario_curve(sc);
    cfg.nu = sc.nu;
    for (double s : sc.defenders) cfg.defender_arcs.push_back(cfg.curve.reduce(s));
    cfg.intruder_points = sc.intruders;
    cfg.defender_policy = parse_defender_policy(sc.defender_policy);
    cfg.intruder_policy = parse_intruder_policy(sc.intruder_policy);
    cfg.dt = sc.dt;
    cfg.t_max = sc.t_max;
    cfg.capture_eps = sc.capture_eps;
    cfg.reassign_period = sc.reassign_period;
    cfg.seed = sc.seed;
    cfg.scripted_omegas = sc.scripted_omegas;
    cfg.scripted_velocities = sc.scripted_velocities;
    for (std::size_t i = 0; i < cfg.intruder_points.size(); ++i)
        if (!cfg.curve.is_exterior(cfg.intruder_points[i]))
            field_error("intruders[" + std::to_string(i) + "]",
                        "must start strictly outside the perimeter");
    cfg.validate();
    return cfg;
}

}  // namespace pdg
