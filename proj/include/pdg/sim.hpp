#pragma once

#include <cstdint>
#include <vector>

#include "pdg/team.hpp"

namespace pdg {

enum class DefenderPolicy {
    MaxMatching,        // assignment-based, Q_MM bound
    MaxIndependentSet,  // assignment-based with pair defense, Q_MIS bound
    LocalGameRegion,    // three-step LGR defense, Q_LG bound
    Solo,               // each defender plays the 1v1 game against its target
    Duo,                // the first two defenders play the 2v1 game (pincer)
    Stationary,
    Clockwise,
    RandomTurn,
    Scripted,
};

enum class IntruderPolicy {
    GreedyTeam,    // adjacent-pair 2v1 play, ccw bias, per-intruder hysteresis
    Solo,          // optimal 1v1 play against the engaged defender
    ClosestPoint,  // plays the 1v1 strategy computed with a pretend nu ~ 0
    TangentPoint,  // plays the 1v1 strategy computed with a pretend nu = 1
    RandomHeading,
    Scripted,
};

enum class IntruderStatus { Alive, Breached, Captured };

struct SimConfig {
    PerimeterCurve curve;
    double nu = 0.5;
    std::vector<ArcPos> defender_arcs;
    std::vector<Vec2> intruder_points;
    DefenderPolicy defender_policy = DefenderPolicy::Solo;
    IntruderPolicy intruder_policy = IntruderPolicy::Solo;
    // negative values pick the defaults: dt = 1e-3 L, t_max = 3 L,
    // capture_eps = 1e-3 L, hysteresis = 1e-3 L
    double dt = -1.0;
    double t_max = -1.0;
    double capture_eps = -1.0;
    double hysteresis = -1.0;
    int reassign_period = 10;
    std::uint64_t seed = 0;
    bool record_steps = true;
    std::vector<double> scripted_omegas;     // per defender, Scripted policy
    std::vector<Vec2> scripted_velocities;   // per intruder, Scripted policy

    void validate() const;
    double dt_or_default() const;
    double t_max_or_default() const;
    double capture_eps_or_default() const;
    double hysteresis_or_default() const;
};

struct SimEvent {
    enum class Kind { Breach, Capture, Reassign };
    Kind kind = Kind::Breach;
    double t = 0.0;
    int intruder = -1;
    int defender_a = -1;
    int defender_b = -1;
    ArcPos s_breach = 0.0;
    double safe_distance = 0.0;
};

struct StepRecord {
    double t = 0.0;
    std::vector<ArcPos> defender_arcs;
    std::vector<Vec2> intruder_positions;
    std::vector<double> defender_omegas;
    std::vector<Vec2> intruder_velocities;
    std::vector<double> engagement_values;  // per intruder, NaN once resolved
};

struct SimTrace {
    std::vector<StepRecord> steps;
    std::vector<SimEvent> events;
    std::vector<IntruderStatus> final_status;
    int score = 0;  // Q: number of breaches
    double t_end = 0.0;
    int bound_at_start = -1;  // Q_MM / Q_MIS / Q_LG for the matching policy
};

/// Mutable world state; exposed for stepping tests and custom drivers.
struct SimState {
    double t = 0.0;
    std::vector<ArcPos> defender_arcs;
    std::vector<Vec2> intruder_positions;
    std::vector<IntruderStatus> status;
};

/// One synchronous integration step. Controls must satisfy |omega| <= 1 and
/// |u| <= nu (validated). Intruders crossing the boundary are stopped at
/// the crossing point; the returned per-intruder fraction alpha in [0,1]
/// locates the contact within the step (NaN = no contact). Defenders move
/// the full step; the caller rewinds them to alpha for adjudication.
std::vector<double> step_agents(const PerimeterCurve& c, SimState& state,
                                const std::vector<double>& omegas, const std::vector<Vec2>& vels,
                                double dt, double nu);

/// Deterministic fixed-step rollout of the configured policies.
SimTrace run(const SimConfig& config);

}  // namespace pdg
