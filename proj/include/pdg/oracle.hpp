#pragma once

#include <cstdint>

#include "pdg/one_vs_one.hpp"

namespace pdg {

/// Closed-form machinery for the circular perimeter, reduced state (r, theta):
/// r = radial distance from the perimeter, theta = relative polar angle.
namespace circle_game {

/// F(r) from the circular closed form.
double value_integral(double radius, double r, double nu);

/// V(r, theta; nu) = |theta| - F(r) + F(0).
double value(double radius, double r, double theta, double nu);

struct Strategy {
    double omega_d;    // sgn(theta)
    double heading;    // psi_A = sgn(theta) asin(nu R / (R + r))
};

/// Closed-form optimal pair; theta = 0 is singular (both directions tie).
Strategy strategy(double radius, double r, double theta, double nu);

/// World-frame unit velocity direction for an intruder at polar angle
/// theta_world, radial offset r: the heading tilts off the inward ray by
/// psi_A toward the breach side.
Vec2 heading_direction(double radius, double r, double theta_world, double theta_rel, double nu);

}  // namespace circle_game

/// Straight-line dominance test: true iff some discretized visible breach
/// point is reached by the intruder before either defender direction could.
/// Sufficient for an intruder win, not necessary.
bool dominance_test(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu, int grid_n = 512);

enum class RolloutWinner { Intruder, Defender };

struct RolloutConfig {
    int defender_bins = 64;      // quantization of s_D; dt = L / bins
    double cell = -1.0;          // intruder grid cell; <0 picks nu*dt/5
    double margin = 1.5;         // grid margin beyond the shape bbox (lengths of bbox radius)
    std::size_t max_cells = 30'000'000;  // resource cap on bins * nx * ny
};

/// Discretized game-of-kind solver on the joint (s_D, x_A) grid: backward
/// induction of the set from which the intruder can force a clear breach
/// (exists-intruder-move forall-defender-move). Unresolved or revisited
/// states count as defender wins (indefinite delay is a defender win).
class RolloutOracle {
public:
    RolloutOracle(const PerimeterCurve& c, double nu, RolloutConfig cfg = {});

    RolloutWinner winner(ArcPos s_d, Vec2 x_a) const;
    bool truncated() const { return truncated_; }  // resource cap was hit

private:
    std::size_t index(int bin, int ix, int iy) const;
    const PerimeterCurve& curve_;
    double nu_;
    RolloutConfig cfg_;
    double cell_ = 0.0;
    double x0_ = 0.0, y0_ = 0.0;
    int nx_ = 0, ny_ = 0, bins_ = 0;
    std::vector<std::uint8_t> win_;  // 1 = intruder can force a breach
    bool truncated_ = false;
};

/// Convenience wrapper matching the one-shot oracle contract.
RolloutWinner minimax_rollout(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                              RolloutConfig cfg = {});

}  // namespace pdg
