#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include "pdg/geometry.hpp"

namespace pdgtest {

inline pdg::PerimeterCurve unit_square() {
    return pdg::build_perimeter({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline pdg::PerimeterCurve unit_circle(std::size_t n = 2048) { return pdg::make_circle(1.0, n); }

// Arc position of polar angle theta on a uniform-angle circle polygon.
inline pdg::ArcPos circle_arc(const pdg::PerimeterCurve& c, double theta) {
    double t = std::fmod(theta, 2.0 * M_PI);
    if (t < 0) t += 2.0 * M_PI;
    return c.reduce(t / (2.0 * M_PI) * c.total_length());
}

// Point at polar angle theta, radial distance r outside the unit circle.
// Uses the polygon's own boundary point so that r measures from the
// polygonal perimeter, not the ideal circle.
inline pdg::Vec2 circle_exterior_point(const pdg::PerimeterCurve& c, double theta, double r) {
    pdg::Vec2 b = c.point_at(circle_arc(c, theta));
    return b + pdg::normalized(b) * r;
}

// Random strictly convex polygon: convex hull of points sampled on a
// random-radius star around the origin.
inline pdg::PerimeterCurve random_convex_polygon(std::mt19937_64& rng, int min_pts = 6,
                                                 int max_pts = 24) {
    std::uniform_int_distribution<int> np(min_pts, max_pts);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    std::uniform_real_distribution<double> rad(0.5, 1.5);
    for (;;) {
        int n = np(rng);
        std::vector<pdg::Vec2> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double a = ang(rng), r = rad(rng);
            pts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        try {
            pdg::PerimeterCurve c = pdg::build_perimeter(pts);
            if (c.size() >= 4) return c;
        } catch (const std::invalid_argument&) {
        }
    }
}

// Random point strictly outside the curve, within `spread` lengths of the
// boundary.
inline pdg::Vec2 random_exterior_point(std::mt19937_64& rng, const pdg::PerimeterCurve& c,
                                       double spread = 1.0) {
    std::uniform_real_distribution<double> s_dist(0.0, c.total_length());
    std::uniform_real_distribution<double> d_dist(1e-4 * c.total_length(), spread);
    for (;;) {
        pdg::ArcPos s = s_dist(rng);
        pdg::Vec2 p = c.point_at(s);
        auto [tm, tp] = c.tangent_at(s);
        pdg::Vec2 out = pdg::perp_ccw(tm + tp) * -0.5;  // outward normal-ish
        pdg::Vec2 x = p + pdg::normalized(out) * d_dist(rng);
        if (c.is_exterior(x)) return x;
    }
}

}  // namespace pdgtest
