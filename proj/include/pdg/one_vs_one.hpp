#pragma once

#include <vector>

#include "pdg/geometry.hpp"

namespace pdg {

/// |J_L* - J_R*| <= kSingularRelTol * L classifies a state as singular.
inline constexpr double kSingularRelTol = 1e-9;

enum class SoloRegion { Left, Right, Singular };
enum class SingularBranch { Afferent, Dispersal };

/// One-defender-vs-one-intruder evaluation: breaching points, critical
/// payoffs, region and game value (positive = intruder-winning).
struct SoloEvaluation {
    ArcPos s_left = 0.0;
    ArcPos s_right = 0.0;
    double payoff_left = 0.0;   // J_L*
    double payoff_right = 0.0;  // J_R*
    SoloRegion region = SoloRegion::Right;
    double value = 0.0;
    ArcPos s_defender_opposite = 0.0;
};

void validate_speed_ratio(double nu);

/// Breaching point against a ccw-moving defender: the unique point of the
/// visible segment where the approach angle crosses acos(nu), either on an
/// edge interior or across a vertex jump. nu=1 short-circuits to the left
/// tangent point.
ArcPos left_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu);
ArcPos left_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu, const TangentFan& fan);
/// Mirror image: approach angle crosses pi - acos(nu).
ArcPos right_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu);
ArcPos right_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu, const TangentFan& fan);

/// How much longer the ccw-moving defender takes to reach s_b than the
/// straight-line intruder.
double payoff_left(const PerimeterCurve& c, ArcPos s_b, ArcPos s_d, Vec2 x_a, double nu);
double payoff_right(const PerimeterCurve& c, ArcPos s_b, ArcPos s_d, Vec2 x_a, double nu);

SoloEvaluation evaluate_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu);
SoloEvaluation evaluate_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                             const TangentFan& fan);

/// Optimal intruder velocity: full speed toward the breaching point of the
/// current region (singular states head right, by convention).
Vec2 intruder_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu);

/// Optimal defender speed: +1 (ccw) in the left region, -1 otherwise.
double defender_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu);
/// Anti-chatter variant: keeps prev_omega while |J_L*-J_R*| <= band.
double defender_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                            double prev_omega, double band);

/// Which branch of {J_L*=J_R*} a (near-)singular state lies on: afferent
/// (rooted at the defender) or dispersal (rooted at the antipode).
SingularBranch singular_branch(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a);

/// Sampled zero level set of V for a fixed defender position: left branch
/// sweeps x_bar(s) = gamma(s) - nu d(s_D->s) R(phi_L*) T(s) ccw from s_D,
/// right branch mirrors cw, joined where J_L* = J_R* (dispersal surface).
/// Returns a closed polyline anchored at gamma(s_D); straight edges map to
/// segments, corners insert circular arcs.
std::vector<Vec2> barrier_sample(const PerimeterCurve& c, ArcPos s_d, double nu,
                                 std::size_t n_samples);

/// Euclidean distance from a defender-winning state to the barrier:
/// -nu * V. Throws std::domain_error when V > 0.
double distance_to_barrier(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu);

}  // namespace pdg
