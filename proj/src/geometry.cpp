#include "pdg/geometry.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pdg {

namespace {

double clamp_unit(double v) { return std::max(-1.0, std::min(1.0, v)); }

// Squared distance from p to segment [a,b] and arc offset of the closest point.
std::pair<double, double> point_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double l2 = norm2(ab);
    double t = l2 > 0.0 ? std::clamp(dot(p - a, ab) / l2, 0.0, 1.0) : 0.0;
    Vec2 q = a + ab * t;
    return {norm2(p - q), t * std::sqrt(l2)};
}

}  // namespace

ArcPos PerimeterCurve::reduce(double s) const {
    double r = std::fmod(s, length_);
    if (r < 0.0) r += length_;
    if (r >= length_) r = 0.0;
    return r;
}

double PerimeterCurve::arc_distance_ccw(ArcPos a, ArcPos b) const {
    return reduce(b - a);
}

std::size_t PerimeterCurve::edge_index_at(ArcPos s) const {
    s = reduce(s);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), s);
    std::size_t i = static_cast<std::size_t>(it - cum_.begin());
    return (i == 0) ? 0 : std::min(i - 1, verts_.size() - 1);
}

Vec2 PerimeterCurve::point_at(ArcPos s) const {
    s = reduce(s);
    std::size_t i = edge_index_at(s);
    return verts_[i] + edge_dir_[i] * (s - cum_[i]);
}

std::pair<Vec2, Vec2> PerimeterCurve::tangent_at(ArcPos s) const {
    s = reduce(s);
    std::size_t i = edge_index_at(s);
    std::size_t n = verts_.size();
    if (s - cum_[i] <= eps_) {
        // on vertex i: incoming edge is i-1
        return {edge_dir_[(i + n - 1) % n], edge_dir_[i]};
    }
    if (cum_[i + 1] - s <= eps_) {
        // on vertex i+1
        return {edge_dir_[i], edge_dir_[(i + 1) % n]};
    }
    return {edge_dir_[i], edge_dir_[i]};
}

double PerimeterCurve::signed_inset(Vec2 p) const {
    double m = std::numeric_limits<double>::infinity();
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        double d = cross(edge_dir_[i], p - verts_[i]);
        m = std::min(m, d);
    }
    return m;
}

TangentFan PerimeterCurve::tangent_points(Vec2 p) const {
    if (!is_exterior(p))
        throw std::domain_error("tangent_points: query point must be strictly exterior");

    std::size_t n = verts_.size();
    // Angular extremes of the vertex directions seen from p. The total
    // angular extent is < pi for a convex region not containing p, so the
    // cross-product comparator is a valid angle order.
    std::size_t imin = 0, imax = 0;
    Vec2 dmin = verts_[0] - p, dmax = dmin;
    for (std::size_t i = 1; i < n; ++i) {
        Vec2 d = verts_[i] - p;
        double cmin = cross(d, dmin);
        double tol_min = kRelEps * norm(d) * norm(dmin);
        if (cmin > tol_min || (cmin >= -tol_min && norm2(d) > norm2(dmin))) {
            imin = i;
            dmin = d;
        }
        double cmax = cross(d, dmax);
        double tol_max = kRelEps * norm(d) * norm(dmax);
        if (cmax < -tol_max || (cmax <= tol_max && norm2(d) > norm2(dmax))) {
            imax = i;
            dmax = d;
        }
    }
    // The sight line rotates cw (decreasing angle) as s increases over the
    // visible run, so the right touch point is the angular max.
    TangentFan fan;
    fan.s_tan_right = cum_[imax];
    fan.s_tan_left = cum_[imin];
    fan.visible_length = arc_distance_ccw(fan.s_tan_right, fan.s_tan_left);
    return fan;
}

bool PerimeterCurve::in_visible_segment(const TangentFan& fan, ArcPos s) const {
    return arc_distance_ccw(fan.s_tan_right, reduce(s)) <= fan.visible_length + eps_;
}

std::pair<double, double> PerimeterCurve::approach_angle(Vec2 x, ArcPos s) const {
    TangentFan fan = tangent_points(x);
    if (!in_visible_segment(fan, s))
        throw std::domain_error("approach_angle: s outside the visible segment");
    Vec2 dir = normalized(point_at(s) - x);
    auto [tm, tp] = tangent_at(s);
    return {std::acos(clamp_unit(dot(dir, tm))), std::acos(clamp_unit(dot(dir, tp)))};
}

ArcPos PerimeterCurve::nearest_arc(Vec2 p) const {
    std::size_t n = verts_.size();
    double best = std::numeric_limits<double>::infinity();
    double best_s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 a = verts_[i];
        Vec2 b = verts_[(i + 1) % n];
        auto [d2, off] = point_segment(p, a, b);
        if (d2 < best) {
            best = d2;
            best_s = cum_[i] + off;
        }
    }
    return reduce(best_s);
}

bool PerimeterCurve::segment_avoids_interior(Vec2 a, Vec2 b) const {
    // Sample-free test: the segment enters the open interior iff some point
    // strictly inside exists; for a convex region this happens iff the
    // midpoint of the clipped chord is strictly inside. Clip [a,b] against
    // all inside half-planes.
    double t0 = 0.0, t1 = 1.0;
    Vec2 ab = b - a;
    std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n && t0 < t1; ++i) {
        Vec2 e = edge_dir_[i];
        double da = cross(e, a - verts_[i]);
        double db = cross(e, b - verts_[i]);
        // inside half-plane: cross >= 0
        double denom = db - da;
        if (std::abs(denom) < 1e-300) {
            if (da < 0.0) return true;  // fully outside this half-plane: no interior hit
            continue;
        }
        double t = -da / denom;
        if (denom > 0.0) t0 = std::max(t0, t);  // entering
        else t1 = std::min(t1, t);              // leaving
    }
    if (t0 >= t1) return true;  // no chord inside the intersection of half-planes
    Vec2 mid = a + ab * ((t0 + t1) * 0.5);
    return !is_strictly_interior(mid);
}

void PerimeterCurve::finalize() {
    std::size_t n = verts_.size();
    if (n < 3) throw std::invalid_argument("perimeter needs at least 3 vertices");

    cum_.assign(n + 1, 0.0);
    edge_dir_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 e = verts_[(i + 1) % n] - verts_[i];
        double len = norm(e);
        if (len <= 0.0) throw std::invalid_argument("perimeter has a zero-length edge");
        cum_[i + 1] = cum_[i] + len;
        edge_dir_[i] = e / len;
    }
    length_ = cum_[n];
    eps_ = kRelEps * length_;

    double area2 = 0.0;
    centroid_ = {0.0, 0.0};
    std::size_t strict_turns = 0;
    corner_.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 prev = edge_dir_[(i + n - 1) % n];
        Vec2 cur = edge_dir_[i];
        double turn = cross(prev, cur);
        if (turn < -1e-12) throw std::invalid_argument("perimeter is not convex ccw");
        if (turn > 1e-12) ++strict_turns;
        double ang = std::atan2(cross(prev, cur), dot(prev, cur));
        corner_[i] = std::abs(ang) > kCornerAngleTol;
        area2 += cross(verts_[i], verts_[(i + 1) % n]);
        centroid_ += verts_[i];
    }
    if (strict_turns < 3 || area2 <= 0.0)
        throw std::invalid_argument("perimeter is degenerate (collinear or cw)");
    centroid_ = centroid_ / static_cast<double>(n);
}

PerimeterCurve curve_from_ccw_vertices(std::vector<Vec2> verts) {
    PerimeterCurve c;
    c.verts_ = std::move(verts);
    c.finalize();
    return c;
}

PerimeterCurve build_perimeter(const std::vector<Vec2>& points) {
    std::vector<Vec2> pts = points;
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) throw std::invalid_argument("build_perimeter: need at least 3 distinct points");

    // Andrew monotone chain, strict turns only (collinear points dropped).
    auto half = [&](std::vector<Vec2>& out, auto begin, auto end) {
        for (auto it = begin; it != end; ++it) {
            while (out.size() >= 2 &&
                   cross(out[out.size() - 1] - out[out.size() - 2], *it - out[out.size() - 2]) <= 0.0)
                out.pop_back();
            out.push_back(*it);
        }
    };
    std::vector<Vec2> lower, upper;
    half(lower, pts.begin(), pts.end());
    half(upper, pts.rbegin(), pts.rend());
    lower.pop_back();
    upper.pop_back();
    lower.insert(lower.end(), upper.begin(), upper.end());
    if (lower.size() < 3) throw std::invalid_argument("build_perimeter: input is collinear");
    return curve_from_ccw_vertices(std::move(lower));
}

PerimeterCurve make_circle(double radius, std::size_t n) {
    if (radius <= 0.0) throw std::invalid_argument("make_circle: radius must be positive");
    if (n < 3) throw std::invalid_argument("make_circle: need n >= 3");
    std::vector<Vec2> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        v[k] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return curve_from_ccw_vertices(std::move(v));
}

PerimeterCurve make_piecewise_ellipse(const std::array<std::array<double, 2>, 4>& semi_axes,
                                      std::size_t n) {
    if (n < 8) throw std::invalid_argument("make_piecewise_ellipse: need n >= 8");
    for (int q = 0; q < 4; ++q) {
        if (semi_axes[q][0] <= 0.0 || semi_axes[q][1] <= 0.0)
            throw std::invalid_argument("make_piecewise_ellipse: semi-axes must be positive");
    }
    // C0 continuity at quadrant boundaries: the active semi-axis must match.
    if (semi_axes[0][1] != semi_axes[1][1] || semi_axes[1][0] != semi_axes[2][0] ||
        semi_axes[2][1] != semi_axes[3][1] || semi_axes[3][0] != semi_axes[0][0])
        throw std::invalid_argument("make_piecewise_ellipse: quadrant semi-axes disagree at a boundary");

    std::vector<Vec2> v(n);
    for (std::size_t k = 0; k < n; ++k) {
        double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        int q = std::min(3, static_cast<int>(t / (M_PI / 2.0)));
        double a = semi_axes[static_cast<std::size_t>(q)][0];
        double b = semi_axes[static_cast<std::size_t>(q)][1];
        v[k] = {a * std::cos(t), b * std::sin(t)};
    }
    return curve_from_ccw_vertices(std::move(v));
}

}  // namespace pdg
