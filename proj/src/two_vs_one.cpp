#include "pdg/two_vs_one.hpp"

#include <cmath>
#include <stdexcept>

namespace pdg {

namespace {

void require_distinct(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2) {
    double gap = std::min(c.arc_distance_ccw(s_d1, s_d2), c.arc_distance_ccw(s_d2, s_d1));
    if (gap <= c.epsilon())
        throw std::invalid_argument("degenerate defender pair (coincident positions)");
}

bool is_left(const SoloEvaluation& ev) { return ev.region == SoloRegion::Left; }

}  // namespace

bool relevant_region(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu) {
    return relevant_region(c, s_d1, s_d2, x_a, nu, c.tangent_points(x_a));
}

bool relevant_region(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu,
                     const TangentFan& fan) {
    require_distinct(c, s_d1, s_d2);
    bool left1 = is_left(evaluate_solo(c, s_d1, x_a, nu, fan));
    bool left2 = is_left(evaluate_solo(c, s_d2, x_a, nu, fan));
    if (c.arc_distance_ccw(s_d1, s_d2) < 0.5 * c.total_length())
        return left1 && !left2;
    return left1 || !left2;
}

DuoEvaluation evaluate_duo_ordered(const PerimeterCurve& c, ArcPos s_di, ArcPos s_dj, Vec2 x_a,
                                   double nu) {
    return evaluate_duo_ordered(c, s_di, s_dj, x_a, nu, c.tangent_points(x_a));
}

DuoEvaluation evaluate_duo_ordered(const PerimeterCurve& c, ArcPos s_di, ArcPos s_dj, Vec2 x_a,
                                   double nu, const TangentFan& fan) {
    require_distinct(c, s_di, s_dj);
    validate_speed_ratio(nu);

    DuoEvaluation ev;
    ev.s_di = c.reduce(s_di);
    ev.s_dj = c.reduce(s_dj);
    double d_pair = c.arc_distance_ccw(s_di, s_dj);
    double half = 0.5 * d_pair;
    ev.s_mid = c.reduce(s_di + half);
    ev.c_radius = 0.5 * nu * d_pair;
    ev.solo_i = evaluate_solo(c, s_di, x_a, nu, fan);
    ev.solo_j = evaluate_solo(c, s_dj, x_a, nu, fan);

    ArcPos s_l = ev.solo_i.s_left;
    ArcPos s_r = ev.solo_j.s_right;
    if (c.arc_distance_ccw(s_di, s_l) < half) {
        ev.region = DuoRegion::I;
        ev.s_opt = s_l;
        ev.value = ev.solo_i.payoff_left;
    } else if (double g = c.arc_distance_ccw(ev.s_mid, s_r); g > 0.0 && g <= half) {
        ev.region = DuoRegion::J;
        ev.s_opt = s_r;
        ev.value = ev.solo_j.payoff_right;
    } else {
        ev.region = DuoRegion::Mid;
        ev.s_opt = ev.s_mid;
        ev.value = half - norm(c.point_at(ev.s_mid) - x_a) / nu;
    }
    return ev;
}

DuoEvaluation evaluate_duo(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu) {
    return evaluate_duo(c, s_d1, s_d2, x_a, nu, c.tangent_points(x_a));
}

DuoEvaluation evaluate_duo(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu,
                           const TangentFan& fan) {
    bool first_cw = relevant_region(c, s_d1, s_d2, x_a, nu, fan);
    DuoEvaluation ev = first_cw ? evaluate_duo_ordered(c, s_d1, s_d2, x_a, nu, fan)
                                : evaluate_duo_ordered(c, s_d2, s_d1, x_a, nu, fan);
    ev.first_is_cw = first_cw;
    return ev;
}

Vec2 intruder_control_2v1(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a, double nu) {
    DuoEvaluation ev = evaluate_duo(c, s_d1, s_d2, x_a, nu);
    return normalized(c.point_at(ev.s_opt) - x_a) * nu;
}

std::pair<double, double> defender_control_2v1(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2,
                                               Vec2 x_a, double nu) {
    require_distinct(c, s_d1, s_d2);
    TangentFan fan = c.tangent_points(x_a);
    SoloEvaluation ev1 = evaluate_solo(c, s_d1, x_a, nu, fan);
    if (ev1.value <= 0.0) return {is_left(ev1) ? 1.0 : -1.0, 0.0};
    SoloEvaluation ev2 = evaluate_solo(c, s_d2, x_a, nu, fan);
    if (ev2.value <= 0.0) return {0.0, is_left(ev2) ? 1.0 : -1.0};

    bool first_cw;
    if (c.arc_distance_ccw(s_d1, s_d2) < 0.5 * c.total_length())
        first_cw = is_left(ev1) && !is_left(ev2);
    else
        first_cw = is_left(ev1) || !is_left(ev2);
    return first_cw ? std::pair{1.0, -1.0} : std::pair{-1.0, 1.0};
}

DuoRegionReport duo_region_report(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a,
                                  double nu) {
    return duo_region_report(c, s_d1, s_d2, x_a, nu, c.tangent_points(x_a));
}

DuoRegionReport duo_region_report(const PerimeterCurve& c, ArcPos s_d1, ArcPos s_d2, Vec2 x_a,
                                  double nu, const TangentFan& fan) {
    DuoEvaluation ev = evaluate_duo(c, s_d1, s_d2, x_a, nu, fan);
    DuoRegionReport rep;
    rep.in_cooperative_win = ev.value > 0.0;
    rep.in_independent_win = ev.solo_i.value > 0.0 && ev.solo_j.value > 0.0;
    rep.in_pair_region = rep.in_independent_win && !rep.in_cooperative_win;
    return rep;
}

}  // namespace pdg
