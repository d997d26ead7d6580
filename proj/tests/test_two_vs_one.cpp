#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "pdg/two_vs_one.hpp"

using namespace pdg;
using pdgtest::circle_arc;
using pdgtest::circle_exterior_point;
using pdgtest::unit_circle;

namespace {
// shared fixture: unit circle, defenders at angles 0 and pi
struct CirclePair {
    PerimeterCurve c = unit_circle();
    ArcPos d1 = 0.0;
    ArcPos d2;
    CirclePair() : d2(circle_arc(c, M_PI)) {}
};
}  // namespace

TEST_CASE("relevant region on the circle") {
    CirclePair f;
    Vec2 above = circle_exterior_point(f.c, M_PI / 2, 0.5);
    Vec2 below = circle_exterior_point(f.c, -M_PI / 2, 0.5);
    CHECK(relevant_region(f.c, f.d1, f.d2, above, 0.5));
    CHECK_FALSE(relevant_region(f.c, f.d1, f.d2, below, 0.5));
    // intruder on the afferent surface of D_1: singular counts as right
    Vec2 on_aff = circle_exterior_point(f.c, 0.0, 0.5);
    CHECK(relevant_region(f.c, f.d1, f.d2, on_aff, 0.5));

    CHECK_THROWS_AS(relevant_region(f.c, 1.0, 1.0, above, 0.5), std::invalid_argument);
}

TEST_CASE("evaluate_duo: symmetric mid-region intruder") {
    CirclePair f;
    double nu = 0.5;
    Vec2 x = circle_exterior_point(f.c, M_PI / 2, 0.5);
    DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
    CHECK(ev.first_is_cw);
    CHECK(ev.region == DuoRegion::Mid);
    CHECK(ev.value == doctest::Approx(M_PI / 2 - 1.0).epsilon(1e-3));
    CHECK(ev.value > 0.0);  // intruder-winning
    CHECK(norm(f.c.point_at(ev.s_mid) - Vec2{0.0, 1.0}) < 1e-3);
    CHECK(ev.c_radius == doctest::Approx(0.25 * nu * f.c.total_length()).epsilon(1e-6));

    // on the circular barrier arc of radius c the mid payoff vanishes
    Vec2 xb = circle_exterior_point(f.c, M_PI / 2, nu * M_PI / 2);
    DuoEvaluation evb = evaluate_duo(f.c, f.d1, f.d2, xb, nu);
    CHECK(evb.region == DuoRegion::Mid);
    CHECK(std::abs(evb.value) < 2e-3);
}

TEST_CASE("evaluate_duo: side region reduces to the 1v1 game") {
    CirclePair f;
    double nu = 0.5;
    Vec2 x = circle_exterior_point(f.c, 0.25, 0.2);  // near D_i's side
    DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
    REQUIRE(ev.region == DuoRegion::I);
    SoloEvaluation solo = evaluate_solo(f.c, f.d1, x, nu);
    CHECK(ev.value == doctest::Approx(solo.payoff_left));
    CHECK(ev.s_opt == doctest::Approx(solo.s_left));
}

TEST_CASE("intruder control 2v1") {
    CirclePair f;
    double nu = 0.5;
    SUBCASE("mid region heads to the midpoint") {
        Vec2 x = circle_exterior_point(f.c, M_PI / 2, 0.5);
        Vec2 u = intruder_control_2v1(f.c, f.d1, f.d2, x, nu);
        CHECK(u.x == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(u.y == doctest::Approx(-nu));
    }
    SUBCASE("side region matches the 1v1 control") {
        Vec2 x = circle_exterior_point(f.c, 0.25, 0.2);
        Vec2 u2 = intruder_control_2v1(f.c, f.d1, f.d2, x, nu);
        Vec2 u1 = intruder_control_1v1(f.c, f.d1, x, nu);
        CHECK(norm(u2 - u1) < 1e-9);
    }
    SUBCASE("control is continuous across the R_I / R_mid boundary") {
        // scan a ray of constant radius; where the region flips, the aim
        // point s_L coincides with s_mid
        Vec2 prev_u{0, 0};
        DuoRegion prev_region = DuoRegion::Mid;
        bool seen_flip = false;
        for (int k = 0; k <= 300; ++k) {
            double th = 0.2 + (M_PI / 2 - 0.2) * k / 300.0;
            Vec2 x = circle_exterior_point(f.c, th, 0.4);
            DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
            Vec2 u = intruder_control_2v1(f.c, f.d1, f.d2, x, nu);
            if (k > 0 && ev.region != prev_region) {
                seen_flip = true;
                CHECK(norm(u - prev_u) < 0.05);  // small step => small control change
            }
            prev_u = u;
            prev_region = ev.region;
        }
        CHECK(seen_flip);
    }
}

TEST_CASE("defender control 2v1") {
    CirclePair f;
    double nu = 0.5;
    SUBCASE("pair region plays the pincer") {
        Vec2 x = circle_exterior_point(f.c, M_PI / 2, nu * M_PI / 2 + 0.05);
        DuoRegionReport rep = duo_region_report(f.c, f.d1, f.d2, x, nu);
        REQUIRE(rep.in_pair_region);
        auto [w1, w2] = defender_control_2v1(f.c, f.d1, f.d2, x, nu);
        CHECK(w1 == doctest::Approx(1.0));
        CHECK(w2 == doctest::Approx(-1.0));
    }
    SUBCASE("one defender already winning plays 1v1, the other holds") {
        Vec2 x = circle_exterior_point(f.c, 0.3, 1.2);  // deep in D_1's winning region
        REQUIRE(evaluate_solo(f.c, f.d1, x, nu).value < 0.0);
        REQUIRE(evaluate_solo(f.c, f.d2, x, nu).value > 0.0);
        auto [w1, w2] = defender_control_2v1(f.c, f.d1, f.d2, x, nu);
        CHECK(std::abs(w1) == doctest::Approx(1.0));
        CHECK(w2 == doctest::Approx(0.0));
    }
    SUBCASE("pincer shrinks the mid circle at rate nu exactly") {
        double dt = 1e-3;
        ArcPos s1 = f.d1, s2 = f.d2;
        Vec2 x = circle_exterior_point(f.c, M_PI / 2, nu * M_PI / 2 + 0.05);
        for (int step = 0; step < 100; ++step) {
            DuoEvaluation ev = evaluate_duo(f.c, s1, s2, x, nu);
            auto [w1, w2] = defender_control_2v1(f.c, s1, s2, x, nu);
            if (!(w1 == 1.0 && w2 == -1.0)) break;  // left the pair region
            ArcPos n1 = f.c.reduce(s1 + w1 * dt), n2 = f.c.reduce(s2 + w2 * dt);
            DuoEvaluation ev2 = evaluate_duo(f.c, n1, n2, x, nu);
            CHECK((ev2.c_radius - ev.c_radius) / dt == doctest::Approx(-nu).epsilon(1e-9));
            s1 = n1;
            s2 = n2;
        }
    }
}

TEST_CASE("duo region report") {
    CirclePair f;
    double nu = 0.5;
    // just outside the c-circle: pair wins but neither defender does
    Vec2 x_pair = circle_exterior_point(f.c, M_PI / 2, nu * M_PI / 2 + 0.02);
    DuoRegionReport rep = duo_region_report(f.c, f.d1, f.d2, x_pair, nu);
    CHECK_FALSE(rep.in_cooperative_win);
    CHECK(rep.in_independent_win);
    CHECK(rep.in_pair_region);

    // inside the c-circle: intruder beats the pair
    Vec2 x_win = circle_exterior_point(f.c, M_PI / 2, 0.3);
    rep = duo_region_report(f.c, f.d1, f.d2, x_win, nu);
    CHECK(rep.in_cooperative_win);
    CHECK_FALSE(rep.in_pair_region);

    // in one defender's winning region: not independently winning
    Vec2 x_caught = circle_exterior_point(f.c, 0.3, 1.2);
    rep = duo_region_report(f.c, f.d1, f.d2, x_caught, nu);
    CHECK_FALSE(rep.in_independent_win);
    CHECK_FALSE(rep.in_pair_region);
}

TEST_CASE("V_ij is continuous across region boundaries") {
    CirclePair f;
    double nu = 0.6;
    DuoRegion prev = DuoRegion::Mid;
    double prev_v = 0.0;
    for (int k = 0; k <= 600; ++k) {
        double th = 0.15 + (M_PI - 0.3) * k / 600.0;
        Vec2 x = circle_exterior_point(f.c, th, 0.35);
        DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
        if (k > 0 && ev.region != prev) {
            CHECK(std::abs(ev.value - prev_v) < 5e-3);  // one sample step apart
        }
        prev = ev.region;
        prev_v = ev.value;
    }
}

TEST_CASE("in the mid region |cos phi(s_mid)| < nu (beta bound)") {
    CirclePair f;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> th(0.1, M_PI - 0.1);
    std::uniform_real_distribution<double> rr(0.05, 1.2);
    double nu = 0.7;
    int tested = 0;
    while (tested < 60) {
        Vec2 x = circle_exterior_point(f.c, th(rng), rr(rng));
        DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
        if (ev.region != DuoRegion::Mid) continue;
        TangentFan fan = f.c.tangent_points(x);
        if (!f.c.in_visible_segment(fan, ev.s_mid)) continue;
        auto [am, ap] = f.c.approach_angle(x, ev.s_mid);
        double cphi = std::cos(0.5 * (am + ap));
        CHECK(std::abs(cphi) < nu + 1e-6);
        ++tested;
    }
}

TEST_CASE("zero level set of V_ij: middle segment is a circular arc of radius c") {
    CirclePair f;
    double nu = 0.5;
    DuoEvaluation ref = evaluate_duo(f.c, f.d1, f.d2, circle_exterior_point(f.c, M_PI / 2, 0.3), nu);
    Vec2 center = f.c.point_at(ref.s_mid);
    int arc_hits = 0;
    for (int k = 0; k <= 60; ++k) {
        // rays from the mid point across the outward half-plane
        double delta = 0.15 + (M_PI - 0.3) * k / 60.0;
        Vec2 dir{std::cos(delta), std::sin(delta)};
        double lo = 0.01, hi = 2.5;
        if (!f.c.is_exterior(center + dir * lo)) continue;
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            Vec2 x = center + dir * mid;
            (evaluate_duo(f.c, f.d1, f.d2, x, nu).value > 0 ? lo : hi) = mid;
        }
        Vec2 x0 = center + dir * (0.5 * (lo + hi));
        DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x0, nu);
        if (ev.region != DuoRegion::Mid) continue;
        CHECK(std::abs(norm(x0 - center) - ev.c_radius) < 2e-3 * f.c.total_length());
        ++arc_hits;
    }
    CHECK(arc_hits > 15);  // mid arc spans ~2(pi/2 - acos(nu)) of the fan
}

TEST_CASE("pincer keeps V_ij from increasing for any intruder motion") {
    CirclePair f;
    double nu = 0.6, dt = 1e-3;
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> hd(0.0, 2 * M_PI);
    ArcPos s1 = f.d1, s2 = f.d2;
    Vec2 x = circle_exterior_point(f.c, M_PI / 2, nu * M_PI / 2 + 0.1);
    for (int step = 0; step < 200; ++step) {
        DuoEvaluation ev = evaluate_duo(f.c, s1, s2, x, nu);
        if (ev.region != DuoRegion::Mid) break;
        double v0 = ev.value;
        double a = hd(rng);
        Vec2 x1 = x + Vec2{nu * std::cos(a), nu * std::sin(a)} * dt;
        if (!f.c.is_exterior(x1)) break;
        ArcPos n1 = f.c.reduce(s1 + dt), n2 = f.c.reduce(s2 - dt);
        double v1 = evaluate_duo(f.c, n1, n2, x1, nu).value;
        CHECK(v1 <= v0 + 5.0 * dt);
        x = x1;
        s1 = n1;
        s2 = n2;
    }
}

TEST_CASE("far defender does not change the near game") {
    CirclePair f;
    double nu = 0.4;
    Vec2 x = circle_exterior_point(f.c, 0.15, 0.25);
    DuoEvaluation ev = evaluate_duo(f.c, f.d1, f.d2, x, nu);
    SoloEvaluation solo = evaluate_solo(f.c, f.d1, x, nu);
    REQUIRE(ev.region == DuoRegion::I);
    CHECK(ev.value == doctest::Approx(solo.value).epsilon(1e-9));
}
