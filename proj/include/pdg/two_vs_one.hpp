#pragma once

#include <utility>

#include "pdg/one_vs_one.hpp"

namespace pdg {

enum class DuoRegion { I, J, Mid };

/// Two-defenders-vs-one-intruder evaluation for an ordered pair: D_i on the
/// cw side of the intruder's part of the game space, D_j on the ccw side.
struct DuoEvaluation {
    ArcPos s_di = 0.0;
    ArcPos s_dj = 0.0;
    bool first_is_cw = true;  // input s_d1 took the D_i role
    ArcPos s_mid = 0.0;
    DuoRegion region = DuoRegion::Mid;
    ArcPos s_opt = 0.0;
    double value = 0.0;     // V_ij
    double c_radius = 0.0;  // 0.5 * nu * d(Di->Dj)
    SoloEvaluation solo_i;  // 1v1 view against D_i
    SoloEvaluation solo_j;
};

struct DuoRegionReport {
    bool in_cooperative_win = false;  // A_C: V_ij > 0
    bool in_independent_win = false;  // A_I: wins both 1v1 games
    bool in_pair_region = false;      // R_pair = A_I - A_C
};

/// True iff the intruder lies in the part of the game space bounded by the
/// two afferent surfaces on the ccw side from s_d1 to s_d2; decides which
/// input defender acts as D_i.
bool relevant_region(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu);
bool relevant_region(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu,
                     const TangentFan& fan);

/// Evaluation for an already-ordered pair (s_di cw side, s_dj ccw side).
DuoEvaluation evaluate_duo_ordered(const PerimeterCurve& c, ArcPos s_di, ArcPos s_dj, Vec2 x_a,
                                   double nu);
DuoEvaluation evaluate_duo_ordered(const PerimeterCurve& c, ArcPos s_di, ArcPos s_dj, Vec2 x_a,
                                   double nu, const TangentFan& fan);

/// Orders the pair via relevant_region, then evaluates.
DuoEvaluation evaluate_duo(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu);
DuoEvaluation evaluate_duo(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu,
                           const TangentFan& fan);

/// Full-speed straight-line control toward the optimal breaching point
/// (s_L / s_R / s_mid by region).
Vec2 intruder_control_2v1(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu);

/// (omega_d1, omega_d2): if one defender already wins its 1v1 game it plays
/// that game and the other holds; otherwise the pincer maneuver.
std::pair<double, double> defender_control_2v1(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2,
                                               Vec2 x_a, double nu);

DuoRegionReport duo_region_report(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a,
                                  double nu);
DuoRegionReport duo_region_report(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a,
                                  double nu, const TangentFan& fan);

}  // namespace pdg
