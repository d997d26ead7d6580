#include "pdg/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace pdg {

void SimConfig::validate() const {
    validate_speed_ratio(nu);
    if (dt_or_default() <= 0.0) throw std::invalid_argument("sim: dt must be positive");
    if (capture_eps_or_default() <= 0.0)
        throw std::invalid_argument("sim: capture_eps must be positive");
    if (t_max_or_default() <= 0.0) throw std::invalid_argument("sim: t_max must be positive");
    if (reassign_period < 1) throw std::invalid_argument("sim: reassign_period must be >= 1");
    for (const Vec2& x : intruder_points)
        if (!curve.is_exterior(x))
            throw std::invalid_argument("sim: all intruders must start strictly outside");
    if (defender_policy == DefenderPolicy::Duo && defender_arcs.size() < 2)
        throw std::invalid_argument("sim: duo policy needs at least two defenders");
    if (defender_policy == DefenderPolicy::Scripted &&
        scripted_omegas.size() != defender_arcs.size())
        throw std::invalid_argument("sim: scripted policy needs one omega per defender");
    if (intruder_policy == IntruderPolicy::Scripted &&
        scripted_velocities.size() != intruder_points.size())
        throw std::invalid_argument("sim: scripted policy needs one velocity per intruder");
}

double SimConfig::dt_or_default() const {
    return dt > 0.0 ? dt : 1e-3 * curve.total_length();
}
double SimConfig::t_max_or_default() const {
    return t_max > 0.0 ? t_max : 3.0 * curve.total_length();
}
double SimConfig::capture_eps_or_default() const {
    return capture_eps > 0.0 ? capture_eps : 1e-3 * curve.total_length();
}
double SimConfig::hysteresis_or_default() const {
    return hysteresis >= 0.0 ? hysteresis : 1e-3 * curve.total_length();
}

std::vector<double> step_agents(const PerimeterCurve& c, SimState& state,
                                const std::vector<double>& omegas, const std::vector<Vec2>& vels,
                                double dt, double nu) {
    if (omegas.size() != state.defender_arcs.size() || vels.size() != state.intruder_positions.size())
        throw std::invalid_argument("step_agents: control vector sizes mismatch");
    constexpr double kBoundTol = 1e-9;
    for (double w : omegas)
        if (std::abs(w) > 1.0 + kBoundTol)
            throw std::invalid_argument("step_agents: defender speed bound violated");
    for (const Vec2& u : vels)
        if (norm(u) > nu * (1.0 + kBoundTol) + kBoundTol)
            throw std::invalid_argument("step_agents: intruder speed bound violated");

    for (std::size_t d = 0; d < state.defender_arcs.size(); ++d)
        state.defender_arcs[d] = c.reduce(state.defender_arcs[d] + omegas[d] * dt);

    std::vector<double> contact(state.intruder_positions.size(),
                                std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < state.intruder_positions.size(); ++i) {
        if (state.status[i] != IntruderStatus::Alive) continue;
        Vec2 x0 = state.intruder_positions[i];
        Vec2 x1 = x0 + vels[i] * dt;
        if (c.is_exterior(x1)) {
            state.intruder_positions[i] = x1;
            continue;
        }
        // boundary contact inside the step: bisect the touch fraction
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            (c.is_exterior(x0 + vels[i] * (mid * dt)) ? lo : hi) = mid;
        }
        contact[i] = hi;
        state.intruder_positions[i] = x0 + vels[i] * (hi * dt);
    }
    return contact;
}

namespace {

struct Engagement {
    int da = -1;
    int db = -1;
};

std::vector<Engagement> engagement_map(const Assignment& as, std::size_t n_int) {
    std::vector<Engagement> map(n_int);
    for (const auto& e : as.edges) {
        auto& m = map[static_cast<std::size_t>(e.intruder)];
        m.da = e.defender_a;
        m.db = e.defender_b;
    }
    return map;
}

bool same_edges(const Assignment& a, const Assignment& b) {
    if (a.edges.size() != b.edges.size()) return false;
    for (std::size_t k = 0; k < a.edges.size(); ++k) {
        const auto& x = a.edges[k];
        const auto& y = b.edges[k];
        if (x.defender_a != y.defender_a || x.defender_b != y.defender_b ||
            x.intruder != y.intruder || x.secondary != y.secondary)
            return false;
    }
    return true;
}

int nearest_defender(const PerimeterCurve& c, const std::vector<ArcPos>& arcs, Vec2 x) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < arcs.size(); ++d) {
        double dist = norm(c.point_at(arcs[d]) - x);
        if (dist < bd) {
            bd = dist;
            best = static_cast<int>(d);
        }
    }
    return best;
}

}  // namespace

SimTrace run(const SimConfig& config) {
    config.validate();
    const PerimeterCurve& c = config.curve;
    const double dt = config.dt_or_default();
    const double t_max = config.t_max_or_default();
    const double cap_eps = config.capture_eps_or_default();
    const double band = config.hysteresis_or_default();
    const double nu = config.nu;
    const std::size_t nd = config.defender_arcs.size();
    const std::size_t na = config.intruder_points.size();

    SimState st;
    st.defender_arcs.reserve(nd);
    for (ArcPos s : config.defender_arcs) st.defender_arcs.push_back(c.reduce(s));
    st.intruder_positions = config.intruder_points;
    st.status.assign(na, IntruderStatus::Alive);

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<int> turn_dist(-1, 1);
    std::uniform_real_distribution<double> angle_dist(0.0, 2.0 * M_PI);

    const bool assignment_based = config.defender_policy == DefenderPolicy::MaxMatching ||
                                  config.defender_policy == DefenderPolicy::MaxIndependentSet ||
                                  config.defender_policy == DefenderPolicy::LocalGameRegion;

    SimTrace trace;
    Assignment current;
    std::vector<Engagement> engaged(na);

    // Guaranteed engagements persist once made (their 1v1 / pincer
    // invariants hold from any state inside them), so the LGR refresh keeps
    // still-valid edges and only re-plans the remainder. A pair edge whose
    // intruder entered one member's winning region hands off to that member
    // and frees the partner. Matching-based policies re-solve from scratch:
    // every edge they emit is winning at emission time.
    auto sticky_lgr_edges = [&]() -> Assignment {
        Assignment kept;
        for (const auto& e : current.edges) {
            if (e.secondary) continue;
            std::size_t i = static_cast<std::size_t>(e.intruder);
            if (st.status[i] != IntruderStatus::Alive) continue;
            Vec2 x = st.intruder_positions[i];
            if (!e.is_pair()) {
                if (evaluate_solo(c, st.defender_arcs[static_cast<std::size_t>(e.defender_a)], x,
                                  nu)
                        .value <= 0.0)
                    kept.edges.push_back(e);
                continue;
            }
            ArcPos sa = st.defender_arcs[static_cast<std::size_t>(e.defender_a)];
            ArcPos sb = st.defender_arcs[static_cast<std::size_t>(e.defender_b)];
            TangentFan fan = c.tangent_points(x);
            double va = evaluate_solo(c, sa, x, nu, fan).value;
            double vb = evaluate_solo(c, sb, x, nu, fan).value;
            if (va <= 0.0) {
                kept.edges.push_back({e.defender_a, -1, e.intruder, false});
            } else if (vb <= 0.0) {
                kept.edges.push_back({e.defender_b, -1, e.intruder, false});
            } else if (evaluate_duo(c, sa, sb, x, nu, fan).value <= 0.0) {
                kept.edges.push_back(e);  // still inside the paired-defense region
            }
        }
        return kept;
    };

    auto compute_assignment = [&]() -> Assignment {
        Assignment base;
        if (config.defender_policy == DefenderPolicy::LocalGameRegion) base = sticky_lgr_edges();

        std::vector<bool> def_used(nd, false), int_engaged(na, false);
        for (const auto& e : base.edges) {
            def_used[static_cast<std::size_t>(e.defender_a)] = true;
            if (e.defender_b >= 0) def_used[static_cast<std::size_t>(e.defender_b)] = true;
            int_engaged[static_cast<std::size_t>(e.intruder)] = true;
        }
        std::vector<int> free_def, alive_idx;
        std::vector<ArcPos> free_def_arcs;
        std::vector<Vec2> alive_pos;
        for (std::size_t d = 0; d < nd; ++d)
            if (!def_used[d]) {
                free_def.push_back(static_cast<int>(d));
                free_def_arcs.push_back(st.defender_arcs[d]);
            }
        for (std::size_t i = 0; i < na; ++i)
            if (st.status[i] == IntruderStatus::Alive && !int_engaged[i]) {
                alive_idx.push_back(static_cast<int>(i));
                alive_pos.push_back(st.intruder_positions[i]);
            }

        Assignment sub;
        if (!alive_pos.empty() && !free_def.empty()) {
            switch (config.defender_policy) {
                case DefenderPolicy::MaxMatching:
                    sub = mm_assignment(c, free_def_arcs, alive_pos, nu).first;
                    break;
                case DefenderPolicy::MaxIndependentSet:
                    sub = mis_assignment(c, free_def_arcs, alive_pos, nu).first;
                    break;
                case DefenderPolicy::LocalGameRegion:
                    sub = lgr_defense_assignment(c, free_def_arcs, alive_pos, nu);
                    break;
                default:
                    break;
            }
        }
        for (auto& e : sub.edges) {
            e.defender_a = free_def[static_cast<std::size_t>(e.defender_a)];
            if (e.defender_b >= 0) e.defender_b = free_def[static_cast<std::size_t>(e.defender_b)];
            e.intruder = alive_idx[static_cast<std::size_t>(e.intruder)];
            base.edges.push_back(e);
        }
        return base;
    };
    auto refresh_assignment = [&](bool record_event) {
        if (!assignment_based) return;
        Assignment as = compute_assignment();
        if (record_event && !same_edges(as, current)) {
            SimEvent ev;
            ev.kind = SimEvent::Kind::Reassign;
            ev.t = st.t;
            trace.events.push_back(ev);
        }
        current = std::move(as);
        engaged = engagement_map(current, na);
    };

    // bound recorded from the initial configuration
    try {
        switch (config.defender_policy) {
            case DefenderPolicy::MaxMatching:
                trace.bound_at_start =
                    mm_assignment(c, st.defender_arcs, st.intruder_positions, nu).second;
                break;
            case DefenderPolicy::MaxIndependentSet:
                trace.bound_at_start =
                    mis_assignment(c, st.defender_arcs, st.intruder_positions, nu).second;
                break;
            case DefenderPolicy::LocalGameRegion:
                trace.bound_at_start =
                    lgr_bounds(c, st.defender_arcs, st.intruder_positions, nu).q_lg;
                break;
            default:
                break;
        }
    } catch (const MisCapacityError&) {
        trace.bound_at_start = -1;
    }

    refresh_assignment(false);

    std::vector<double> prev_omega(nd, 0.0);
    std::vector<std::pair<int, int>> pair_state(na, {-1, -1});

    auto alive_count = [&]() {
        std::size_t n = 0;
        for (auto s : st.status)
            if (s == IntruderStatus::Alive) ++n;
        return n;
    };

    auto resolve = [&](std::size_t i, SimEvent ev) {
        st.status[i] = (ev.kind == SimEvent::Kind::Breach) ? IntruderStatus::Breached
                                                           : IntruderStatus::Captured;
        trace.events.push_back(ev);
    };

    int step_idx = 0;
    while (st.t < t_max - 1e-12 && alive_count() > 0) {
        if (assignment_based && step_idx > 0 && step_idx % config.reassign_period == 0)
            refresh_assignment(true);

        // defender controls
        std::vector<double> omegas(nd, 0.0);
        switch (config.defender_policy) {
            case DefenderPolicy::MaxMatching:
            case DefenderPolicy::MaxIndependentSet:
            case DefenderPolicy::LocalGameRegion:
                for (const auto& e : current.edges) {
                    std::size_t i = static_cast<std::size_t>(e.intruder);
                    if (st.status[i] != IntruderStatus::Alive) continue;
                    Vec2 x = st.intruder_positions[i];
                    if (e.is_pair()) {
                        auto [w1, w2] = defender_control_2v1(
                            c, st.defender_arcs[static_cast<std::size_t>(e.defender_a)],
                            st.defender_arcs[static_cast<std::size_t>(e.defender_b)], x, nu);
                        omegas[static_cast<std::size_t>(e.defender_a)] = w1;
                        omegas[static_cast<std::size_t>(e.defender_b)] = w2;
                    } else {
                        std::size_t d = static_cast<std::size_t>(e.defender_a);
                        omegas[d] = defender_control_1v1(c, st.defender_arcs[d], x, nu,
                                                         prev_omega[d], band);
                    }
                }
                break;
            case DefenderPolicy::Solo:
                for (std::size_t d = 0; d < nd; ++d) {
                    // chase the nearest alive intruder
                    double bd = std::numeric_limits<double>::infinity();
                    int target = -1;
                    for (std::size_t i = 0; i < na; ++i) {
                        if (st.status[i] != IntruderStatus::Alive) continue;
                        double dist = norm(st.intruder_positions[i] - c.point_at(st.defender_arcs[d]));
                        if (dist < bd) {
                            bd = dist;
                            target = static_cast<int>(i);
                        }
                    }
                    if (target >= 0)
                        omegas[d] = defender_control_1v1(
                            c, st.defender_arcs[d],
                            st.intruder_positions[static_cast<std::size_t>(target)], nu,
                            prev_omega[d], band);
                }
                break;
            case DefenderPolicy::Duo: {
                int target = -1;
                for (std::size_t i = 0; i < na && target < 0; ++i)
                    if (st.status[i] == IntruderStatus::Alive) target = static_cast<int>(i);
                if (target >= 0) {
                    auto [w1, w2] = defender_control_2v1(
                        c, st.defender_arcs[0], st.defender_arcs[1],
                        st.intruder_positions[static_cast<std::size_t>(target)], nu);
                    omegas[0] = w1;
                    omegas[1] = w2;
                }
                break;
            }
            case DefenderPolicy::Stationary:
                break;
            case DefenderPolicy::Clockwise:
                std::fill(omegas.begin(), omegas.end(), -1.0);
                break;
            case DefenderPolicy::RandomTurn:
                for (auto& w : omegas) w = static_cast<double>(turn_dist(rng));
                break;
            case DefenderPolicy::Scripted:
                for (std::size_t d = 0; d < nd; ++d)
                    omegas[d] = std::clamp(config.scripted_omegas[d], -1.0, 1.0);
                break;
        }
        prev_omega = omegas;

        // intruder controls
        std::vector<Vec2> vels(na, Vec2{0, 0});
        switch (config.intruder_policy) {
            case IntruderPolicy::GreedyTeam: {
                std::vector<int> alive_idx;
                std::vector<Vec2> alive_pos;
                std::vector<std::pair<int, int>> alive_state;
                for (std::size_t i = 0; i < na; ++i)
                    if (st.status[i] == IntruderStatus::Alive) {
                        alive_idx.push_back(static_cast<int>(i));
                        alive_pos.push_back(st.intruder_positions[i]);
                        alive_state.push_back(pair_state[i]);
                    }
                if (!alive_idx.empty() && nd > 0) {
                    auto us = intruder_team_greedy(c, st.defender_arcs, alive_pos, nu, alive_state);
                    for (std::size_t k = 0; k < alive_idx.size(); ++k) {
                        vels[static_cast<std::size_t>(alive_idx[k])] = us[k];
                        pair_state[static_cast<std::size_t>(alive_idx[k])] = alive_state[k];
                    }
                }
                break;
            }
            case IntruderPolicy::Solo:
            case IntruderPolicy::ClosestPoint:
            case IntruderPolicy::TangentPoint: {
                double nu_used = nu;
                if (config.intruder_policy == IntruderPolicy::ClosestPoint) nu_used = 0.01;
                if (config.intruder_policy == IntruderPolicy::TangentPoint) nu_used = 1.0;
                for (std::size_t i = 0; i < na; ++i) {
                    if (st.status[i] != IntruderStatus::Alive || nd == 0) continue;
                    int d = engaged[i].da >= 0 ? engaged[i].da
                                               : nearest_defender(c, st.defender_arcs, st.intruder_positions[i]);
                    Vec2 u = intruder_control_1v1(c, st.defender_arcs[static_cast<std::size_t>(d)],
                                                  st.intruder_positions[i], nu_used);
                    vels[i] = normalized(u) * nu;  // pretend ratio shapes the aim, not the speed
                }
                break;
            }
            case IntruderPolicy::RandomHeading:
                for (std::size_t i = 0; i < na; ++i)
                    if (st.status[i] == IntruderStatus::Alive) {
                        double a = angle_dist(rng);
                        vels[i] = Vec2{std::cos(a), std::sin(a)} * nu;
                    }
                break;
            case IntruderPolicy::Scripted:
                for (std::size_t i = 0; i < na; ++i)
                    if (st.status[i] == IntruderStatus::Alive) {
                        Vec2 u = config.scripted_velocities[i];
                        double m = norm(u);
                        vels[i] = (m > nu && m > 0.0) ? u * (nu / m) : u;
                    }
                break;
        }

        // integrate
        double t0 = st.t;
        std::vector<double> contact = step_agents(c, st, omegas, vels, dt, nu);

        bool resolved_any = false;
        // boundary contacts: breach unless a defender covers the point
        for (std::size_t i = 0; i < na; ++i) {
            if (st.status[i] != IntruderStatus::Alive || std::isnan(contact[i])) continue;
            double alpha = contact[i];
            Vec2 x = st.intruder_positions[i];
            ArcPos s_b = c.nearest_arc(x);
            // defender arcs rewound to the contact instant
            std::vector<ArcPos> arcs_at(nd);
            for (std::size_t d = 0; d < nd; ++d)
                arcs_at[d] = c.reduce(st.defender_arcs[d] - omegas[d] * (1.0 - alpha) * dt);

            int blocker = -1;
            double safe = std::numeric_limits<double>::infinity();
            for (std::size_t d = 0; d < nd; ++d) {
                double gap = std::min(c.arc_distance_ccw(arcs_at[d], s_b),
                                      c.arc_distance_ccw(s_b, arcs_at[d]));
                if (gap <= cap_eps && blocker < 0) blocker = static_cast<int>(d);
            }
            // safe distance versus the engaged defender(s)
            {
                int da = engaged[i].da, db = engaged[i].db;
                if (da < 0 && nd > 0) da = nearest_defender(c, arcs_at, x);
                for (int d : {da, db})
                    if (d >= 0)
                        safe = std::min(safe,
                                        std::min(c.arc_distance_ccw(arcs_at[static_cast<std::size_t>(d)], s_b),
                                                 c.arc_distance_ccw(s_b, arcs_at[static_cast<std::size_t>(d)])));
            }
            SimEvent ev;
            ev.t = t0 + alpha * dt;
            ev.intruder = static_cast<int>(i);
            ev.s_breach = s_b;
            if (blocker >= 0) {
                ev.kind = SimEvent::Kind::Capture;
                ev.defender_a = blocker;
            } else {
                ev.kind = SimEvent::Kind::Breach;
                ev.safe_distance = std::isfinite(safe) ? safe : 0.0;
                ev.defender_a = engaged[i].da;
                ev.defender_b = engaged[i].db;
            }
            resolve(i, ev);
            resolved_any = true;
        }

        // proximity capture and afferent-surface capture
        for (std::size_t i = 0; i < na; ++i) {
            if (st.status[i] != IntruderStatus::Alive) continue;
            Vec2 x = st.intruder_positions[i];
            int catcher = -1;
            for (std::size_t d = 0; d < nd && catcher < 0; ++d)
                if (norm(x - c.point_at(st.defender_arcs[d])) <= cap_eps)
                    catcher = static_cast<int>(d);
            if (catcher < 0) {
                // the engaged defender captures on its afferent surface
                int fallback = engaged[i].da < 0 && nd > 0
                                   ? nearest_defender(c, st.defender_arcs, x)
                                   : -1;
                // band: the capture_eps neighborhood of the surface plus the
                // per-step hover amplitude of the discrete-time stabilization
                const double band = 2.0 * (cap_eps + 2.0 * dt) / nu;
                for (int d : {engaged[i].da >= 0 ? engaged[i].da : fallback, engaged[i].db}) {
                    if (d < 0) continue;
                    ArcPos sd = st.defender_arcs[static_cast<std::size_t>(d)];
                    SoloEvaluation ev = evaluate_solo(c, sd, x, nu);
                    if (std::abs(ev.payoff_left - ev.payoff_right) <= band &&
                        singular_branch(c, sd, x) == SingularBranch::Afferent) {
                        catcher = d;
                        break;
                    }
                }
            }
            if (catcher >= 0) {
                SimEvent ev;
                ev.kind = SimEvent::Kind::Capture;
                ev.t = t0 + dt;
                ev.intruder = static_cast<int>(i);
                ev.defender_a = catcher;
                resolve(i, ev);
                resolved_any = true;
            }
        }

        st.t = t0 + dt;
        ++step_idx;

        if (config.record_steps) {
            StepRecord rec;
            rec.t = st.t;
            rec.defender_arcs = st.defender_arcs;
            rec.intruder_positions = st.intruder_positions;
            rec.defender_omegas = omegas;
            rec.intruder_velocities = vels;
            rec.engagement_values.assign(na, std::numeric_limits<double>::quiet_NaN());
            for (std::size_t i = 0; i < na; ++i) {
                if (st.status[i] != IntruderStatus::Alive) continue;
                Vec2 x = st.intruder_positions[i];
                int da = engaged[i].da, db = engaged[i].db;
                if (da < 0 && nd > 0) da = nearest_defender(c, st.defender_arcs, x);
                if (da < 0) continue;
                if (db >= 0) {
                    rec.engagement_values[i] =
                        evaluate_duo(c, st.defender_arcs[static_cast<std::size_t>(da)],
                                     st.defender_arcs[static_cast<std::size_t>(db)], x, nu)
                            .value;
                } else {
                    rec.engagement_values[i] =
                        evaluate_solo(c, st.defender_arcs[static_cast<std::size_t>(da)], x, nu).value;
                }
            }
            trace.steps.push_back(std::move(rec));
        }

        if (resolved_any) refresh_assignment(true);
    }

    trace.final_status = st.status;
    trace.t_end = st.t;
    trace.score = 0;
    for (auto s : st.status)
        if (s == IntruderStatus::Breached) ++trace.score;
    return trace;
}

}  // namespace pdg
