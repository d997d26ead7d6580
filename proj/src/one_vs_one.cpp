#include "pdg/one_vs_one.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pdg {

namespace {

// Unique crossing of cos(phi) through `target` over the visible segment.
// Over S_d, cos(phi) is non-decreasing ccw, continuous along edges, with
// upward jumps at vertices; the one-sided values facing out of S_d at the
// two tangent vertices do not participate. The interleaved sequence
//   cos_after(v0), cos_before(v1), cos_after(v1), ..., cos_before(v_last)
// is therefore monotone; binary-search it, then resolve the crossing with
// the vertex rule or a closed-form edge solve.
ArcPos breaching_point(const PerimeterCurve& c, Vec2 x_a, double target, const TangentFan& fan) {
    const auto& verts = c.vertices();
    const std::size_t n = verts.size();
    const std::size_t i0 = c.edge_index_at(fan.s_tan_right);
    const std::size_t i1 = c.edge_index_at(fan.s_tan_left);
    const std::size_t m = ((i1 + n - i0) % n) + 1;  // vertices in S_d, inclusive

    auto cos_before = [&](std::size_t k) {
        std::size_t j = (i0 + k) % n;
        Vec2 dir = normalized(verts[j] - x_a);
        return dot(dir, c.edge_dir((j + n - 1) % n));
    };
    auto cos_after = [&](std::size_t k) {
        std::size_t j = (i0 + k) % n;
        Vec2 dir = normalized(verts[j] - x_a);
        return dot(dir, c.edge_dir(j));
    };
    // interleaved index: 0 -> after(0); odd 2k-1 -> before(k); even 2k -> after(k)
    auto val = [&](std::size_t idx) {
        if (idx == 0) return cos_after(0);
        std::size_t k = (idx + 1) / 2;
        return (idx % 2 == 1) ? cos_before(k) : cos_after(k);
    };

    const std::size_t last = 2 * (m - 1) - 1;  // index of cos_before(m-1)
    std::size_t lo = 0, hi = last + 1;
    while (lo < hi) {  // first interleaved value >= target
        std::size_t mid = (lo + hi) / 2;
        if (val(mid) >= target) hi = mid;
        else lo = mid + 1;
    }
    if (lo > last) return c.reduce(c.cum_length_at(i1));  // phi above phi* everywhere: max at s_tan_L
    if (lo == 0) return c.reduce(c.cum_length_at(i0));    // phi below phi* from the start: max at s_tan_R
    std::size_t k = (lo + 1) / 2;
    std::size_t jstar = (i0 + k) % n;
    if (lo % 2 == 0) return c.reduce(c.cum_length_at(jstar));  // vertex rule at v_k

    // crossing inside the edge ending at v_k
    std::size_t j = (jstar + n - 1) % n;
    Vec2 p = verts[j];
    Vec2 t_dir = c.edge_dir(j);
    Vec2 w = p - x_a;
    double a = dot(w, t_dir);
    double h2 = std::max(norm2(w) - a * a, 0.0);
    double u = target * std::sqrt(h2 / (1.0 - target * target));
    double t = std::clamp(u - a, 0.0, c.cum_length_at(j + 1) - c.cum_length_at(j));
    return c.reduce(c.cum_length_at(j) + t);
}

bool in_left_half(const PerimeterCurve& c, ArcPos s_d, ArcPos s) {
    return c.arc_distance_ccw(s_d, s) <= 0.5 * c.total_length() + c.epsilon();
}

}  // namespace

void validate_speed_ratio(double nu) {
    if (!(nu > 0.0) || nu > 1.0)
        throw std::invalid_argument("speed ratio nu must be in (0,1]");
}

ArcPos left_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu, const TangentFan& fan) {
    validate_speed_ratio(nu);
    if (nu == 1.0) return fan.s_tan_left;
    return breaching_point(c, x_a, nu, fan);
}

ArcPos left_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu) {
    return left_breaching_point(c, x_a, nu, c.tangent_points(x_a));
}

ArcPos right_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu, const TangentFan& fan) {
    validate_speed_ratio(nu);
    if (nu == 1.0) return fan.s_tan_right;
    return breaching_point(c, x_a, -nu, fan);
}

ArcPos right_breaching_point(const PerimeterCurve& c, Vec2 x_a, double nu) {
    return right_breaching_point(c, x_a, nu, c.tangent_points(x_a));
}

double payoff_left(const PerimeterCurve& c, ArcPos s_b, ArcPos s_d, Vec2 x_a, double nu) {
    validate_speed_ratio(nu);
    return c.arc_distance_ccw(s_d, s_b) - norm(c.point_at(s_b) - x_a) / nu;
}

double payoff_right(const PerimeterCurve& c, ArcPos s_b, ArcPos s_d, Vec2 x_a, double nu) {
    validate_speed_ratio(nu);
    return c.arc_distance_ccw(s_b, s_d) - norm(c.point_at(s_b) - x_a) / nu;
}

SoloEvaluation evaluate_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                             const TangentFan& fan) {
    SoloEvaluation ev;
    ev.s_left = left_breaching_point(c, x_a, nu, fan);
    ev.s_right = right_breaching_point(c, x_a, nu, fan);
    ev.payoff_left = payoff_left(c, ev.s_left, s_d, x_a, nu);
    ev.payoff_right = payoff_right(c, ev.s_right, s_d, x_a, nu);
    ev.s_defender_opposite = c.reduce(s_d + 0.5 * c.total_length());

    bool sl_in_left = in_left_half(c, s_d, ev.s_left);
    bool sr_in_right = in_left_half(c, ev.s_defender_opposite, ev.s_right);

    if (std::abs(ev.payoff_left - ev.payoff_right) <= kSingularRelTol * c.total_length()) {
        ev.region = SoloRegion::Singular;
    } else if ((sl_in_left && sr_in_right && ev.payoff_left > ev.payoff_right) ||
               (sl_in_left && !sr_in_right) ||
               (!sl_in_left && !sr_in_right && ev.payoff_left < ev.payoff_right)) {
        ev.region = SoloRegion::Left;
    } else {
        ev.region = SoloRegion::Right;
    }
    ev.value = (ev.region == SoloRegion::Left) ? ev.payoff_left : ev.payoff_right;
    return ev;
}

SoloEvaluation evaluate_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu) {
    return evaluate_solo(c, s_d, x_a, nu, c.tangent_points(x_a));
}

Vec2 intruder_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu) {
    SoloEvaluation ev = evaluate_solo(c, s_d, x_a, nu);
    ArcPos aim = (ev.region == SoloRegion::Left) ? ev.s_left : ev.s_right;
    return normalized(c.point_at(aim) - x_a) * nu;
}

double defender_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu) {
    SoloEvaluation ev = evaluate_solo(c, s_d, x_a, nu);
    return (ev.region == SoloRegion::Left) ? 1.0 : -1.0;
}

double defender_control_1v1(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                            double prev_omega, double band) {
    SoloEvaluation ev = evaluate_solo(c, s_d, x_a, nu);
    double omega = (ev.region == SoloRegion::Left) ? 1.0 : -1.0;
    if (prev_omega != 0.0 && omega != prev_omega &&
        std::abs(ev.payoff_left - ev.payoff_right) <= band)
        return prev_omega;
    return omega;
}

SingularBranch singular_branch(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a) {
    ArcPos s_near = c.nearest_arc(x_a);
    double gap = std::min(c.arc_distance_ccw(s_d, s_near), c.arc_distance_ccw(s_near, s_d));
    return gap < 0.25 * c.total_length() ? SingularBranch::Afferent : SingularBranch::Dispersal;
}

namespace {

// One piece of a barrier branch: either the image of a straight edge part
// (a segment) or of a vertex (a circular arc of radius nu*w). tau is the
// exact barrier arc length: edges advance at sqrt(1-nu^2) per unit s,
// corner arcs at nu*w per radian.
struct BarrierPiece {
    double tau0 = 0.0, tau1 = 0.0;
    bool corner = false;
    // edge piece: x(sigma) = p0 + step_dir * sigma, sigma in [0, span]
    Vec2 p0;
    Vec2 step_dir;
    double span = 0.0;
    // corner piece: x(psi) = vertex - rotated(dir_in, psi) * radius,
    // psi from 0 to turn (signed; negative on the right branch)
    Vec2 vertex;
    double radius = 0.0;
    Vec2 dir_in;
    double turn = 0.0;
};

struct BarrierBranch {
    std::vector<BarrierPiece> pieces;
    double tau_end = 0.0;

    Vec2 at(double tau) const {
        auto it = std::upper_bound(pieces.begin(), pieces.end(), tau,
                                   [](double v, const BarrierPiece& p) { return v < p.tau1; });
        const BarrierPiece& p = (it == pieces.end()) ? pieces.back() : *it;
        double len = p.tau1 - p.tau0;
        double frac = len > 0.0 ? std::clamp((tau - p.tau0) / len, 0.0, 1.0) : 0.0;
        if (!p.corner) return p.p0 + p.step_dir * (frac * p.span);
        return p.vertex - rotated(p.dir_in, frac * p.turn) * p.radius;
    }
};

// Left branch walks ccw from s_d with approach angle acos(nu); right branch
// walks cw with pi - acos(nu). The unwound length w is the arc distance
// back to the defender along the walk direction.
BarrierBranch build_branch(const PerimeterCurve& c, ArcPos s_d, double nu, bool left) {
    const double phi = left ? std::acos(nu) : M_PI - std::acos(nu);
    const double edge_rate = std::sqrt(std::max(0.0, 1.0 - nu * nu));
    const std::size_t n = c.size();
    const double w_max = 0.995 * c.total_length();

    BarrierBranch br;
    double tau = 0.0;
    double w = 0.0;
    ArcPos s = c.reduce(s_d);
    std::size_t edge = c.edge_index_at(s);
    Vec2 pos = c.point_at(s);

    while (w < w_max) {
        double span = left ? c.cum_length_at(edge + 1) - s : s - c.cum_length_at(edge);
        Vec2 t_dir = c.edge_dir(edge);
        Vec2 u = rotated(t_dir, phi);  // intruder->boundary direction on this edge
        if (span > 0.0) {
            BarrierPiece p;
            p.tau0 = tau;
            p.tau1 = tau + span * edge_rate;
            p.p0 = pos - u * (nu * w);
            p.step_dir = left ? t_dir - u * nu : (t_dir + u * nu) * -1.0;
            p.span = span;
            br.pieces.push_back(p);
            tau = p.tau1;
            w += span;
        }
        // vertex reached by the walk, and the edge beyond it
        std::size_t v_idx = left ? (edge + 1) % n : edge;
        std::size_t edge_next = left ? v_idx : (edge + n - 1) % n;
        Vec2 t_a = left ? t_dir : c.edge_dir(edge_next);
        Vec2 t_b = left ? c.edge_dir(edge_next) : t_dir;
        double turn = std::atan2(cross(t_a, t_b), dot(t_a, t_b));  // >= 0 for convex ccw
        if (turn > 0.0 && w > 0.0) {
            BarrierPiece p;
            p.corner = true;
            p.tau0 = tau;
            p.tau1 = tau + nu * w * turn;
            p.vertex = c.vertices()[v_idx];
            p.radius = nu * w;
            p.dir_in = rotated(t_dir, phi);  // arrival direction at the vertex
            p.turn = left ? turn : -turn;
            br.pieces.push_back(p);
            tau = p.tau1;
        }
        edge = edge_next;
        s = left ? c.cum_length_at(edge) : c.cum_length_at(edge + 1);
        pos = c.vertices()[v_idx];
    }
    br.tau_end = tau;
    return br;
}

}  // namespace

std::vector<Vec2> barrier_sample(const PerimeterCurve& c, ArcPos s_d, double nu,
                                 std::size_t n_samples) {
    validate_speed_ratio(nu);
    if (n_samples < 8) throw std::invalid_argument("barrier_sample: n_samples >= 8 required");

    BarrierBranch left = build_branch(c, s_d, nu, true);
    BarrierBranch right = build_branch(c, s_d, nu, false);

    // Truncate each branch where the swept point exits its home region
    // (the dispersal surface); the singular band itself still belongs to
    // the branch.
    auto on_branch = [&](const BarrierBranch& br, double tau, bool left_branch) {
        Vec2 x = br.at(tau);
        SoloEvaluation ev = evaluate_solo(c, s_d, x, nu);
        if (ev.region == SoloRegion::Singular) return true;
        return left_branch ? ev.region == SoloRegion::Left : ev.region == SoloRegion::Right;
    };
    auto find_join = [&](const BarrierBranch& br, bool left_branch) {
        const int scan = 512;
        double t_prev = br.tau_end * 1e-6;
        for (int i = 1; i <= scan; ++i) {
            double t = br.tau_end * static_cast<double>(i) / scan;
            if (!on_branch(br, t, left_branch)) {
                double lo = t_prev, hi = t;
                for (int it = 0; it < 60 && hi - lo > 1e-12 * c.total_length(); ++it) {
                    double mid = 0.5 * (lo + hi);
                    (!on_branch(br, mid, left_branch) ? hi : lo) = mid;
                }
                return 0.5 * (lo + hi);
            }
            t_prev = t;
        }
        throw std::runtime_error("barrier_sample: dispersal join not found");
    };
    double tau_left = find_join(left, true);
    double tau_right = find_join(right, false);

    std::size_t half = std::max<std::size_t>(4, n_samples / 2);
    std::vector<Vec2> out;
    out.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        double tau = tau_left * static_cast<double>(i) / static_cast<double>(half - 1);
        out.push_back(left.at(tau));
    }
    const double weld = 1e-6 * c.total_length();
    for (std::size_t i = 0; i < half; ++i) {
        double tau = tau_right * static_cast<double>(half - 1 - i) / static_cast<double>(half - 1);
        Vec2 p = right.at(tau);
        if (i == 0 && norm(p - out.back()) <= weld) continue;          // weld at the join
        if (i + 1 == half && norm(p - out.front()) <= weld) continue;  // root duplicated
        out.push_back(p);
    }
    return out;
}

double distance_to_barrier(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu) {
    SoloEvaluation ev = evaluate_solo(c, s_d, x_a, nu);
    if (ev.value > 0.0)
        throw std::domain_error("distance_to_barrier: state is intruder-winning (V > 0)");
    return -nu * ev.value;
}

}  // namespace pdg
