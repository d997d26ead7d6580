#pragma once

#include <stdexcept>
#include <vector>

#include "pdg/two_vs_one.hpp"

namespace pdg {

/// One assignment edge: a defender (or an unordered defender pair) chasing
/// an intruder. Secondary edges are best-effort pursuits of intruders no
/// one is guaranteed to stop.
struct AssignmentEdge {
    int defender_a = -1;
    int defender_b = -1;  // >= 0 for pair edges
    int intruder = -1;
    bool secondary = false;
    bool is_pair() const { return defender_b >= 0; }
};

struct Assignment {
    std::vector<AssignmentEdge> edges;
    std::vector<int> unassigned_intruders;
    int guaranteed_captures() const;
};

/// Bipartite win structure of one instance: solo edges where the defender
/// wins the 1v1 game, pair edges where the pair (and neither member alone)
/// wins via the pincer.
struct EngagementGraph {
    struct SoloEdge {
        int defender, intruder;
    };
    struct PairEdge {
        int defender_a, defender_b, intruder;
    };
    std::vector<SoloEdge> solo_edges;
    std::vector<PairEdge> pair_edges;
};

/// Per-region record of the local-game analysis. i == j marks the
/// degenerate single-defender region, whose footprint is the whole
/// perimeter.
struct LgrRegion {
    int i = 0, j = 0;
    ArcPos arc_start = 0.0;
    double arc_len = 0.0;  // ccw extent; total length for degenerate regions
    int n_intruders = 0;
    int n_defenders = 0;
    int n_pair_intruders = 0;
    int q = 0;
    int q_ext = 0;
    std::vector<std::pair<int, double>> members;       // (intruder, V_ij)
    std::vector<std::pair<int, double>> pair_members;  // (intruder, V_ij) within R_pair
};

struct ScoreBounds {
    int q_mm = 0;
    int q_mis = 0;
    int q_lg = 0;
    std::vector<LgrRegion> regions;
    std::vector<int> chosen_regions;  // optimal disjoint set attaining q_lg
};

struct MisCapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact MIS instances are capped; larger graphs raise MisCapacityError
/// (approximate solvers would void the score bound).
inline constexpr std::size_t kMisNodeCap = 64;

bool defender_wins_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu);

EngagementGraph build_engagement_graph(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu);

/// Maximum-cardinality matching on the solo win graph; unmatched defenders
/// get a secondary greedy pursuit. Returns the assignment and Q_MM.
std::pair<Assignment, int> mm_assignment(const PerimeterCurve& c,
                                         const std::vector<ArcPos>& defenders,
                                         const std::vector<Vec2>& intruders, double nu);
/// Heterogeneous variant: per-defender speed ratio.
std::pair<Assignment, int> mm_assignment(const PerimeterCurve& c,
                                         const std::vector<ArcPos>& defenders,
                                         const std::vector<Vec2>& intruders,
                                         const std::vector<double>& nu_per_defender);

/// Pair-aware assignment via an exact maximum independent set over the
/// engagement-graph edges (conflicts: shared defender or intruder).
std::pair<Assignment, int> mis_assignment(const PerimeterCurve& c,
                                          const std::vector<ArcPos>& defenders,
                                          const std::vector<Vec2>& intruders, double nu);

/// Local-game-region analysis: all N_D^2 regions, local scores, and the
/// exact max-weight arc-disjoint selection (Q_LG), plus Q_MM and Q_MIS.
ScoreBounds lgr_bounds(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                       const std::vector<Vec2>& intruders, double nu);

/// Three-step LGR defense: drop the Q_LG strongest intruders of the chosen
/// positive regions, assign pairs to R_pair intruders greedily by V_ij,
/// then maximum matching on the remainder.
Assignment lgr_defense_assignment(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                                  const std::vector<Vec2>& intruders, double nu);

/// Independently greedy intruder team: each intruder plays the 2v1 game
/// against the adjacent defender pair whose relevant region contains it
/// (ccw bias on afferent-surface ties). pair_state carries the previous
/// pair per intruder for hysteresis; pass {-1,-1} entries initially.
std::vector<Vec2> intruder_team_greedy(const PerimeterCurve& c,
                                       const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu,
                                       std::vector<std::pair<int, int>>& pair_state);
std::vector<Vec2> intruder_team_greedy(const PerimeterCurve& c,
                                       const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu);

}  // namespace pdg
