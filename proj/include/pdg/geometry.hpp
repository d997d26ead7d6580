#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace pdg {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double xi, double yi) : x(xi), y(yi) {}

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    Vec2 operator/(double k) const { return {x / k, y / k}; }
    Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline Vec2 normalized(Vec2 a) { double n = norm(a); return {a.x / n, a.y / n}; }
inline Vec2 rotated(Vec2 v, double angle) {
    double c = std::cos(angle), s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}
inline Vec2 perp_ccw(Vec2 v) { return {-v.y, v.x}; }

/// Arc-length position along a perimeter, reduced modulo the total length
/// by all curve operations.
using ArcPos = double;

/// Supporting-line touch points seen from an exterior point. The visible
/// segment runs ccw from s_tan_right to s_tan_left.
struct TangentFan {
    ArcPos s_tan_right = 0.0;
    ArcPos s_tan_left = 0.0;
    double visible_length = 0.0;
};

/// Convex, ccw, arc-length parameterized closed polygonal perimeter.
/// Smooth shapes are represented as dense polygons (see make_circle /
/// make_piecewise_ellipse). Immutable after construction.
class PerimeterCurve {
public:
    static constexpr double kCornerAngleTol = 1e-6;   // rad, turn below this is a densification artifact
    static constexpr double kRelEps = 1e-9;           // geometry epsilon = kRelEps * L

    const std::vector<Vec2>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }
    double total_length() const { return length_; }
    double epsilon() const { return eps_; }
    double cum_length_at(std::size_t i) const { return cum_[i]; }
    bool vertex_is_corner(std::size_t i) const { return corner_[i]; }
    Vec2 centroid() const { return centroid_; }

    ArcPos reduce(double s) const;
    double arc_distance_ccw(ArcPos a, ArcPos b) const;

    Vec2 point_at(ArcPos s) const;
    /// One-sided unit tangents at s: equal on edge interiors, (incoming,
    /// outgoing) at vertices.
    std::pair<Vec2, Vec2> tangent_at(ArcPos s) const;
    /// Direction of edge i (from vertex i to vertex i+1).
    Vec2 edge_dir(std::size_t i) const { return edge_dir_[i]; }
    /// Index of the edge containing arc position s.
    std::size_t edge_index_at(ArcPos s) const;

    /// Signed distance-like inset: positive strictly inside, negative
    /// strictly outside, |value| <= epsilon() on the boundary band.
    double signed_inset(Vec2 p) const;
    bool is_exterior(Vec2 p) const { return signed_inset(p) < -eps_; }
    bool is_strictly_interior(Vec2 p) const { return signed_inset(p) > eps_; }

    /// Supporting-line touch points from a strictly exterior point.
    /// Throws std::domain_error if p is inside or on the boundary.
    TangentFan tangent_points(Vec2 p) const;
    bool in_visible_segment(const TangentFan& fan, ArcPos s) const;

    /// One-sided approach angles (phi_minus, phi_plus) at s in the visible
    /// segment of x. Throws std::domain_error if s is not visible.
    std::pair<double, double> approach_angle(Vec2 x, ArcPos s) const;

    /// Arc position of the closest boundary point to p.
    ArcPos nearest_arc(Vec2 p) const;

    /// Segment from a to b stays outside the open interior (may graze).
    bool segment_avoids_interior(Vec2 a, Vec2 b) const;

private:
    friend PerimeterCurve build_perimeter(const std::vector<Vec2>& points);
    friend PerimeterCurve curve_from_ccw_vertices(std::vector<Vec2> verts);

    void finalize();  // cum lengths, tangents, corner flags; validates convexity

    std::vector<Vec2> verts_;
    std::vector<double> cum_;       // size n+1, cum_[n] == length_
    std::vector<Vec2> edge_dir_;    // unit, size n
    std::vector<bool> corner_;
    double length_ = 0.0;
    double eps_ = 0.0;
    Vec2 centroid_;
};

/// Convex hull (ccw) of the input points; concave inputs are silently
/// hulled. Throws std::invalid_argument for fewer than 3 distinct points
/// or an all-collinear input.
PerimeterCurve build_perimeter(const std::vector<Vec2>& points);

/// Validates a known-convex ccw vertex list without reordering it (keeps
/// the caller's arc origin).
PerimeterCurve curve_from_ccw_vertices(std::vector<Vec2> verts);

/// Regular n-gon approximation of a circle, vertex 0 at angle 0.
PerimeterCurve make_circle(double radius, std::size_t n = 2048);

/// Piecewise ellipse [a cos t, b sin t] with per-quadrant semi-axes
/// (order: quadrant of t in [0,pi/2], [pi/2,pi], [pi,3pi/2], [3pi/2,2pi]).
/// Adjacent quadrants must agree on the shared semi-axis.
PerimeterCurve make_piecewise_ellipse(const std::array<std::array<double, 2>, 4>& semi_axes,
                                      std::size_t n = 2048);

/// Default quadrant semi-axes for the piecewise ellipse.
inline constexpr std::array<std::array<double, 2>, 4> kDefaultEllipseAxes{
    {{5.0, 2.0}, {2.0, 2.0}, {2.0, 3.0}, {5.0, 3.0}}};

}  // namespace pdg
