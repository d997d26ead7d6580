#include "pdg/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace pdg {

namespace circle_game {

double value_integral(double radius, double r, double nu) {
    validate_speed_ratio(nu);
    if (radius <= 0.0 || r < 0.0) throw std::invalid_argument("circle value: bad geometry");
    double ratio = (radius + r) / (nu * radius);
    return std::sqrt(ratio * ratio - 1.0) - std::acos(1.0 / ratio);
}

double value(double radius, double r, double theta, double nu) {
    return std::abs(theta) - value_integral(radius, r, nu) + value_integral(radius, 0.0, nu);
}

Strategy strategy(double radius, double r, double theta, double nu) {
    validate_speed_ratio(nu);
    if (theta == 0.0)
        throw std::domain_error("circle strategy: theta = 0 is singular (both directions tie)");
    double sgn = theta > 0.0 ? 1.0 : -1.0;
    return {sgn, sgn * std::asin(nu * radius / (radius + r))};
}

Vec2 heading_direction(double radius, double r, double theta_world, double theta_rel, double nu) {
    Strategy s = strategy(radius, r, theta_rel, nu);
    Vec2 to_center{-std::cos(theta_world), -std::sin(theta_world)};
    // tilt off the inward ray toward the breach side (ccw side for theta > 0)
    return rotated(to_center, -s.heading);
}

}  // namespace circle_game

bool dominance_test(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu, int grid_n) {
    validate_speed_ratio(nu);
    TangentFan fan = c.tangent_points(x_a);
    for (int i = 0; i <= grid_n; ++i) {
        ArcPos s = c.reduce(fan.s_tan_right +
                            fan.visible_length * static_cast<double>(i) / grid_n);
        double arc_gap = std::min(c.arc_distance_ccw(s_d, s), c.arc_distance_ccw(s, s_d));
        if (arc_gap > norm(c.point_at(s) - x_a) / nu) return true;
    }
    return false;
}

namespace {

// intruder moves: integer cell offsets of length 5 (exact) plus length
// sqrt(26) (within 2%), 20 directions total
constexpr std::array<std::array<int, 2>, 20> kOffsets{{
    {5, 0},  {-5, 0}, {0, 5},  {0, -5},  {3, 4},  {3, -4},  {-3, 4},  {-3, -4},
    {4, 3},  {4, -3}, {-4, 3}, {-4, -3}, {5, 1},  {5, -1},  {-5, 1},  {-5, -1},
    {1, 5},  {-1, 5}, {1, -5}, {-1, -5},
}};
constexpr int kOffsetScale = 5;

}  // namespace

std::size_t RolloutOracle::index(int bin, int ix, int iy) const {
    return (static_cast<std::size_t>(bin) * static_cast<std::size_t>(ny_) +
            static_cast<std::size_t>(iy)) *
               static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
}

RolloutOracle::RolloutOracle(const PerimeterCurve& c, double nu, RolloutConfig cfg)
    : curve_(c), nu_(nu), cfg_(cfg) {
    validate_speed_ratio(nu);
    bins_ = std::max(8, cfg.defender_bins);
    const double length = c.total_length();
    const double dt = length / bins_;
    cell_ = cfg.cell > 0.0 ? cfg.cell : nu * dt / kOffsetScale;

    // grid covers the shape bbox inflated by the margin
    double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const Vec2& v : c.vertices()) {
        min_x = std::min(min_x, v.x);
        max_x = std::max(max_x, v.x);
        min_y = std::min(min_y, v.y);
        max_y = std::max(max_y, v.y);
    }
    double pad = cfg.margin * 0.5 * std::max(max_x - min_x, max_y - min_y);
    x0_ = min_x - pad;
    y0_ = min_y - pad;
    double extent_x = (max_x - min_x) + 2.0 * pad;
    double extent_y = (max_y - min_y) + 2.0 * pad;

    auto grid_cells = [&](double cell) {
        double nx = std::ceil(extent_x / cell) + 1;
        double ny = std::ceil(extent_y / cell) + 1;
        return static_cast<std::size_t>(nx * ny) * static_cast<std::size_t>(bins_);
    };
    while (grid_cells(cell_) > cfg_.max_cells) {
        cell_ *= 1.3;  // coarsen under the resource cap
        truncated_ = true;
    }
    nx_ = static_cast<int>(std::ceil(extent_x / cell_)) + 1;
    ny_ = static_cast<int>(std::ceil(extent_y / cell_)) + 1;

    const std::size_t n_states = index(bins_ - 1, nx_ - 1, ny_ - 1) + 1;
    // per-cell geometry: inside/contact flags and nearest arc
    const std::size_t n_cells = static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_);
    std::vector<std::uint8_t> contact(n_cells, 0);  // 0 free, 1 boundary contact, 2 interior
    std::vector<float> contact_arc(n_cells, 0.0f);
    const double touch_band = 0.75 * cell_ * kOffsetScale;  // one intruder step reaches it
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix) {
            Vec2 p{x0_ + ix * cell_, y0_ + iy * cell_};
            std::size_t ci = static_cast<std::size_t>(iy) * nx_ + ix;
            double inset = c.signed_inset(p);
            if (inset > 0.0) {
                contact[ci] = 2;
            } else {
                ArcPos s = c.nearest_arc(p);
                double dist = norm(c.point_at(s) - p);
                if (inset >= -c.epsilon() || dist <= touch_band) {
                    contact[ci] = 1;
                    contact_arc[ci] = static_cast<float>(s);
                }
            }
        }

    // terminal win/loss per (bin, cell); capture radius at grid scale
    const double capture_band = dt + 2.0 * cell_;
    std::vector<ArcPos> bin_arc(static_cast<std::size_t>(bins_));
    std::vector<Vec2> bin_pos(static_cast<std::size_t>(bins_));
    for (int b = 0; b < bins_; ++b) {
        bin_arc[static_cast<std::size_t>(b)] = c.reduce(b * dt);
        bin_pos[static_cast<std::size_t>(b)] = c.point_at(bin_arc[static_cast<std::size_t>(b)]);
    }

    win_.assign(n_states, 0);
    std::vector<std::uint8_t> terminal(n_states, 0);  // 1 win, 2 loss
    std::deque<std::size_t> queue;
    for (int b = 0; b < bins_; ++b)
        for (int iy = 0; iy < ny_; ++iy)
            for (int ix = 0; ix < nx_; ++ix) {
                std::size_t ci = static_cast<std::size_t>(iy) * nx_ + ix;
                std::size_t si = index(b, ix, iy);
                if (contact[ci] == 2) {
                    terminal[si] = 2;  // interior cells unreachable; treat as loss
                    continue;
                }
                if (contact[ci] == 1) {
                    double gap = std::min(
                        c.arc_distance_ccw(bin_arc[static_cast<std::size_t>(b)], contact_arc[ci]),
                        c.arc_distance_ccw(contact_arc[ci], bin_arc[static_cast<std::size_t>(b)]));
                    if (gap > capture_band) {
                        terminal[si] = 1;
                        win_[si] = 1;
                        queue.push_back(si);
                    } else {
                        terminal[si] = 2;
                    }
                    continue;
                }
                Vec2 p{x0_ + ix * cell_, y0_ + iy * cell_};
                if (norm(p - bin_pos[static_cast<std::size_t>(b)]) <= capture_band) terminal[si] = 2;
            }

    // counters: per (state, intruder move) the number of defender replies
    // not yet leading to an intruder win
    std::vector<std::uint8_t> cnt(n_states * kOffsets.size(), 0);
    auto next_state = [&](int b, int ix, int iy, int om, std::size_t o) -> long long {
        int nb = (b + om + bins_) % bins_;
        int jx = ix + kOffsets[o][0];
        int jy = iy + kOffsets[o][1];
        if (jx < 0 || jy < 0 || jx >= nx_ || jy >= ny_) return -1;  // off-grid: delay = loss
        return static_cast<long long>(index(nb, jx, jy));
    };

    for (int b = 0; b < bins_; ++b)
        for (int iy = 0; iy < ny_; ++iy)
            for (int ix = 0; ix < nx_; ++ix) {
                std::size_t si = index(b, ix, iy);
                if (terminal[si]) continue;
                for (std::size_t o = 0; o < kOffsets.size(); ++o) {
                    std::uint8_t blockers = 0;
                    bool all_win = true;
                    for (int om = -1; om <= 1; ++om) {
                        long long ns = next_state(b, ix, iy, om, o);
                        bool winning = ns >= 0 && terminal[static_cast<std::size_t>(ns)] != 2 &&
                                       win_[static_cast<std::size_t>(ns)];
                        if (!winning) {
                            ++blockers;
                            all_win = false;
                        }
                    }
                    cnt[si * kOffsets.size() + o] = blockers;
                    if (all_win && !win_[si]) {
                        win_[si] = 1;
                        queue.push_back(si);
                    }
                }
            }

    // attractor propagation over predecessors
    while (!queue.empty()) {
        std::size_t wi = queue.front();
        queue.pop_front();
        int b = static_cast<int>(wi / (static_cast<std::size_t>(ny_) * nx_));
        std::size_t rem = wi % (static_cast<std::size_t>(ny_) * nx_);
        int iy = static_cast<int>(rem / nx_);
        int ix = static_cast<int>(rem % nx_);
        for (int om = -1; om <= 1; ++om) {
            int pb = (b - om + bins_) % bins_;
            for (std::size_t o = 0; o < kOffsets.size(); ++o) {
                int px = ix - kOffsets[o][0];
                int py = iy - kOffsets[o][1];
                if (px < 0 || py < 0 || px >= nx_ || py >= ny_) continue;
                std::size_t pi = index(pb, px, py);
                if (terminal[pi] || win_[pi]) continue;
                std::uint8_t& k = cnt[pi * kOffsets.size() + o];
                if (k > 0 && --k == 0) {
                    win_[pi] = 1;
                    queue.push_back(pi);
                }
            }
        }
    }
}

RolloutWinner RolloutOracle::winner(ArcPos s_d, Vec2 x_a) const {
    const double dt = curve_.total_length() / bins_;
    int b = static_cast<int>(std::lround(curve_.reduce(s_d) / dt)) % bins_;
    int ix = static_cast<int>(std::lround((x_a.x - x0_) / cell_));
    int iy = static_cast<int>(std::lround((x_a.y - y0_) / cell_));
    if (ix < 0 || iy < 0 || ix >= nx_ || iy >= ny_) return RolloutWinner::Defender;
    return win_[index(b, ix, iy)] ? RolloutWinner::Intruder : RolloutWinner::Defender;
}

RolloutWinner minimax_rollout(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu,
                              RolloutConfig cfg) {
    return RolloutOracle(c, nu, cfg).winner(s_d, x_a);
}

}  // namespace pdg
