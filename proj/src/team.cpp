#include "pdg/team.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>

namespace pdg {

int Assignment::guaranteed_captures() const {
    int n = 0;
    for (const auto& e : edges)
        if (!e.secondary) ++n;
    return n;
}

namespace {

// ---------- maximum bipartite matching (Hopcroft-Karp) ----------
class BipartiteMatcher {
public:
    BipartiteMatcher(int n_left, int n_right)
        : nl_(n_left), nr_(n_right), adj_(static_cast<std::size_t>(n_left)) {}

    void add_edge(int l, int r) { adj_[static_cast<std::size_t>(l)].push_back(r); }

    // match_left[l] = matched right node or -1
    std::vector<int> solve() {
        match_l_.assign(static_cast<std::size_t>(nl_), -1);
        match_r_.assign(static_cast<std::size_t>(nr_), -1);
        for (;;) {
            if (!bfs()) break;
            for (int l = 0; l < nl_; ++l)
                if (match_l_[static_cast<std::size_t>(l)] < 0) dfs(l);
        }
        return match_l_;
    }

private:
    bool bfs() {
        std::queue<int> q;
        dist_.assign(static_cast<std::size_t>(nl_), -1);
        for (int l = 0; l < nl_; ++l)
            if (match_l_[static_cast<std::size_t>(l)] < 0) {
                dist_[static_cast<std::size_t>(l)] = 0;
                q.push(l);
            }
        bool found = false;
        while (!q.empty()) {
            int l = q.front();
            q.pop();
            for (int r : adj_[static_cast<std::size_t>(l)]) {
                int l2 = match_r_[static_cast<std::size_t>(r)];
                if (l2 < 0) {
                    found = true;
                } else if (dist_[static_cast<std::size_t>(l2)] < 0) {
                    dist_[static_cast<std::size_t>(l2)] = dist_[static_cast<std::size_t>(l)] + 1;
                    q.push(l2);
                }
            }
        }
        return found;
    }

    bool dfs(int l) {
        for (int r : adj_[static_cast<std::size_t>(l)]) {
            int l2 = match_r_[static_cast<std::size_t>(r)];
            if (l2 < 0 || (dist_[static_cast<std::size_t>(l2)] ==
                               dist_[static_cast<std::size_t>(l)] + 1 &&
                           dfs(l2))) {
                match_l_[static_cast<std::size_t>(l)] = r;
                match_r_[static_cast<std::size_t>(r)] = l;
                return true;
            }
        }
        dist_[static_cast<std::size_t>(l)] = -1;
        return false;
    }

    int nl_, nr_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_l_, match_r_, dist_;
};

// ---------- exact maximum independent set on <= 64 nodes ----------
struct MisSolver {
    int n = 0;
    std::array<std::uint64_t, kMisNodeCap> adj{};
    std::uint64_t best_set = 0;
    int best = 0;

    static std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

    void run() {
        std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : (bit(n) - 1);
        search(all, 0, 0);
    }

    void search(std::uint64_t cand, std::uint64_t cur_set, int cur) {
        // greedily take isolated and degree-1 vertices (always optimal)
        for (;;) {
            bool progressed = false;
            std::uint64_t scan = cand;
            while (scan) {
                int v = std::countr_zero(scan);
                scan &= scan - 1;
                std::uint64_t nb = adj[static_cast<std::size_t>(v)] & cand;
                if (std::popcount(nb) <= 1) {
                    cand &= ~(nb | bit(v));
                    cur_set |= bit(v);
                    ++cur;
                    progressed = true;
                    break;
                }
            }
            if (!progressed) break;
        }
        if (cur + std::popcount(cand) <= best) return;
        if (!cand) {
            if (cur > best) {
                best = cur;
                best_set = cur_set;
            }
            return;
        }
        // branch on the highest-degree candidate
        int pick = -1, deg = -1;
        std::uint64_t scan = cand;
        while (scan) {
            int v = std::countr_zero(scan);
            scan &= scan - 1;
            int d = std::popcount(adj[static_cast<std::size_t>(v)] & cand);
            if (d > deg) {
                deg = d;
                pick = v;
            }
        }
        search(cand & ~(adj[static_cast<std::size_t>(pick)] | bit(pick)), cur_set | bit(pick),
               cur + 1);
        search(cand & ~bit(pick), cur_set, cur);
    }
};

// ---------- weighted arc selection (circular-arc MWIS) ----------
struct WeightedArc {
    double start = 0.0;
    double len = 0.0;
    int weight = 0;
    int tag = 0;  // region index
};

bool arcs_overlap(const WeightedArc& a, const WeightedArc& b, double period, double eps) {
    auto dist_ccw = [period](double from, double to) {
        double d = std::fmod(to - from, period);
        if (d < 0) d += period;
        return d;
    };
    if (a.len >= period - eps || b.len >= period - eps) return true;
    return dist_ccw(a.start, b.start) <= a.len + eps || dist_ccw(b.start, a.start) <= b.len + eps;
}

// weighted interval scheduling on non-wrapping intervals; closed intervals
// sharing an endpoint conflict
int linear_mwis(std::vector<WeightedArc> arcs, double eps, std::vector<int>* chosen) {
    std::sort(arcs.begin(), arcs.end(), [](const WeightedArc& a, const WeightedArc& b) {
        return a.start + a.len < b.start + b.len;
    });
    std::size_t m = arcs.size();
    std::vector<int> dp(m + 1, 0);
    std::vector<int> take_prev(m + 1, 0);
    for (std::size_t k = 1; k <= m; ++k) {
        const WeightedArc& a = arcs[k - 1];
        // last interval ending strictly before a.start
        std::size_t p = 0;
        for (std::size_t j = k - 1; j >= 1; --j) {
            if (arcs[j - 1].start + arcs[j - 1].len < a.start - eps) {
                p = j;
                break;
            }
        }
        int with = a.weight + dp[p];
        dp[k] = std::max(dp[k - 1], with);
        take_prev[k] = (with > dp[k - 1]) ? static_cast<int>(p) : -1;
    }
    if (chosen) {
        for (std::size_t k = m; k > 0;) {
            if (take_prev[k] >= 0) {
                chosen->push_back(arcs[k - 1].tag);
                k = static_cast<std::size_t>(take_prev[k]);
            } else {
                --k;
            }
        }
    }
    return dp[m];
}

int circular_mwis(const std::vector<WeightedArc>& arcs, double period, double eps,
                  std::vector<int>* chosen) {
    auto contains_origin = [&](const WeightedArc& a) {
        if (a.len >= period - eps) return true;
        double d = std::fmod(-a.start, period);
        if (d < 0) d += period;
        return d <= a.len + eps;
    };
    // map an arc to a linear interval on [0, period) cut at the origin
    auto linearized = [&](const WeightedArc& a) {
        WeightedArc la = a;
        double st = std::fmod(a.start, period);
        if (st < 0) st += period;
        la.start = st;
        return la;
    };

    std::vector<WeightedArc> through, clear;
    for (const WeightedArc& a : arcs) {
        (contains_origin(a) ? through : clear).push_back(linearized(a));
    }
    std::vector<int> best_chosen;
    int best = linear_mwis(clear, eps, &best_chosen);

    for (const WeightedArc& a : through) {
        std::vector<WeightedArc> rest;
        for (const WeightedArc& b : clear)
            if (!arcs_overlap(a, b, period, eps)) rest.push_back(b);
        std::vector<int> sub;
        int v = a.weight + linear_mwis(rest, eps, &sub);
        if (v > best) {
            best = v;
            best_chosen = sub;
            best_chosen.push_back(a.tag);
        }
    }
    if (chosen) *chosen = best_chosen;
    return best;
}

// ---------- shared evaluation tables ----------
struct InstanceTables {
    std::vector<TangentFan> fans;              // per intruder
    std::vector<std::vector<double>> solo_v;   // [defender][intruder]
    std::vector<std::vector<SoloRegion>> solo_region;
};

InstanceTables build_tables(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                            const std::vector<Vec2>& intruders, double nu) {
    InstanceTables t;
    t.fans.reserve(intruders.size());
    for (const Vec2& x : intruders) t.fans.push_back(c.tangent_points(x));
    t.solo_v.assign(defenders.size(), std::vector<double>(intruders.size(), 0.0));
    t.solo_region.assign(defenders.size(),
                         std::vector<SoloRegion>(intruders.size(), SoloRegion::Right));
    for (std::size_t d = 0; d < defenders.size(); ++d)
        for (std::size_t a = 0; a < intruders.size(); ++a) {
            SoloEvaluation ev = evaluate_solo(c, defenders[d], intruders[a], nu, t.fans[a]);
            t.solo_v[d][a] = ev.value;
            t.solo_region[d][a] = ev.region;
        }
    return t;
}

void add_secondary_pursuits(Assignment& as, const InstanceTables& t, std::size_t n_def,
                            std::size_t n_int) {
    std::vector<bool> def_used(n_def, false), int_used(n_int, false);
    for (const auto& e : as.edges) {
        def_used[static_cast<std::size_t>(e.defender_a)] = true;
        if (e.defender_b >= 0) def_used[static_cast<std::size_t>(e.defender_b)] = true;
        int_used[static_cast<std::size_t>(e.intruder)] = true;
    }
    for (std::size_t d = 0; d < n_def; ++d) {
        if (def_used[d]) continue;
        int pick = -1;
        double most_threat = -std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < n_int; ++a) {
            if (int_used[a]) continue;
            if (t.solo_v[d][a] > most_threat) {
                most_threat = t.solo_v[d][a];
                pick = static_cast<int>(a);
            }
        }
        if (pick >= 0) {
            as.edges.push_back({static_cast<int>(d), -1, pick, true});
            int_used[static_cast<std::size_t>(pick)] = true;
        }
    }
}

void fill_unassigned(Assignment& as, std::size_t n_int) {
    std::vector<bool> got(n_int, false);
    for (const auto& e : as.edges)
        if (!e.secondary) got[static_cast<std::size_t>(e.intruder)] = true;
    as.unassigned_intruders.clear();
    for (std::size_t a = 0; a < n_int; ++a)
        if (!got[a]) as.unassigned_intruders.push_back(static_cast<int>(a));
}

bool pair_degenerate(const PerimeterCurve& c, ArcPos a, ArcPos b) {
    return std::min(c.arc_distance_ccw(a, b), c.arc_distance_ccw(b, a)) <= c.epsilon();
}

}  // namespace

bool defender_wins_solo(const PerimeterCurve& c, ArcPos s_d, Vec2 x_a, double nu) {
    return evaluate_solo(c, s_d, x_a, nu).value <= 0.0;
}

EngagementGraph build_engagement_graph(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu) {
    InstanceTables t = build_tables(c, defenders, intruders, nu);
    EngagementGraph g;
    for (std::size_t d = 0; d < defenders.size(); ++d)
        for (std::size_t a = 0; a < intruders.size(); ++a)
            if (t.solo_v[d][a] <= 0.0)
                g.solo_edges.push_back({static_cast<int>(d), static_cast<int>(a)});
    for (std::size_t i = 0; i < defenders.size(); ++i)
        for (std::size_t j = i + 1; j < defenders.size(); ++j) {
            if (pair_degenerate(c, defenders[i], defenders[j])) continue;
            for (std::size_t a = 0; a < intruders.size(); ++a) {
                if (t.solo_v[i][a] <= 0.0 || t.solo_v[j][a] <= 0.0) continue;  // independently capturable
                DuoEvaluation ev =
                    evaluate_duo(c, defenders[i], defenders[j], intruders[a], nu, t.fans[a]);
                if (ev.value <= 0.0)
                    g.pair_edges.push_back(
                        {static_cast<int>(i), static_cast<int>(j), static_cast<int>(a)});
            }
        }
    return g;
}

std::pair<Assignment, int> mm_assignment(const PerimeterCurve& c,
                                         const std::vector<ArcPos>& defenders,
                                         const std::vector<Vec2>& intruders,
                                         const std::vector<double>& nu_per_defender) {
    if (nu_per_defender.size() != defenders.size())
        throw std::invalid_argument("mm_assignment: one speed ratio per defender required");
    for (double v : nu_per_defender) validate_speed_ratio(v);

    std::size_t nd = defenders.size(), na = intruders.size();
    std::vector<TangentFan> fans;
    fans.reserve(na);
    for (const Vec2& x : intruders) fans.push_back(c.tangent_points(x));

    InstanceTables t;
    t.fans = fans;
    t.solo_v.assign(nd, std::vector<double>(na, 0.0));
    BipartiteMatcher matcher(static_cast<int>(nd), static_cast<int>(na));
    for (std::size_t d = 0; d < nd; ++d)
        for (std::size_t a = 0; a < na; ++a) {
            SoloEvaluation ev =
                evaluate_solo(c, defenders[d], intruders[a], nu_per_defender[d], fans[a]);
            t.solo_v[d][a] = ev.value;
            if (ev.value <= 0.0) matcher.add_edge(static_cast<int>(d), static_cast<int>(a));
        }
    std::vector<int> match = matcher.solve();

    Assignment as;
    int matched = 0;
    for (std::size_t d = 0; d < nd; ++d)
        if (match[d] >= 0) {
            as.edges.push_back({static_cast<int>(d), -1, match[d], false});
            ++matched;
        }
    int q_mm = static_cast<int>(na) - matched;
    add_secondary_pursuits(as, t, nd, na);
    fill_unassigned(as, na);
    return {as, q_mm};
}

std::pair<Assignment, int> mm_assignment(const PerimeterCurve& c,
                                         const std::vector<ArcPos>& defenders,
                                         const std::vector<Vec2>& intruders, double nu) {
    return mm_assignment(c, defenders, intruders, std::vector<double>(defenders.size(), nu));
}

std::pair<Assignment, int> mis_assignment(const PerimeterCurve& c,
                                          const std::vector<ArcPos>& defenders,
                                          const std::vector<Vec2>& intruders, double nu) {
    EngagementGraph g = build_engagement_graph(c, defenders, intruders, nu);
    struct Node {
        int da, db, a;
    };
    std::vector<Node> nodes;
    for (const auto& e : g.solo_edges) nodes.push_back({e.defender, -1, e.intruder});
    for (const auto& e : g.pair_edges) nodes.push_back({e.defender_a, e.defender_b, e.intruder});
    if (nodes.size() > kMisNodeCap)
        throw MisCapacityError("mis_assignment: engagement graph exceeds the exact-solver cap");

    MisSolver solver;
    solver.n = static_cast<int>(nodes.size());
    auto share_defender = [](const Node& u, const Node& v) {
        auto hits = [](int d, const Node& w) { return d >= 0 && (d == w.da || d == w.db); };
        return hits(u.da, v) || hits(u.db, v);
    };
    for (int u = 0; u < solver.n; ++u)
        for (int v = u + 1; v < solver.n; ++v)
            if (nodes[static_cast<std::size_t>(u)].a == nodes[static_cast<std::size_t>(v)].a ||
                share_defender(nodes[static_cast<std::size_t>(u)],
                               nodes[static_cast<std::size_t>(v)])) {
                solver.adj[static_cast<std::size_t>(u)] |= MisSolver::bit(v);
                solver.adj[static_cast<std::size_t>(v)] |= MisSolver::bit(u);
            }
    solver.run();

    Assignment as;
    for (int v = 0; v < solver.n; ++v)
        if (solver.best_set & MisSolver::bit(v)) {
            const Node& nd = nodes[static_cast<std::size_t>(v)];
            as.edges.push_back({nd.da, nd.db, nd.a, false});
        }
    int q_mis = static_cast<int>(intruders.size()) - solver.best;

    InstanceTables t = build_tables(c, defenders, intruders, nu);
    add_secondary_pursuits(as, t, defenders.size(), intruders.size());
    fill_unassigned(as, intruders.size());
    return {as, q_mis};
}

ScoreBounds lgr_bounds(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                       const std::vector<Vec2>& intruders, double nu) {
    validate_speed_ratio(nu);
    std::size_t nd = defenders.size(), na = intruders.size();
    InstanceTables t = build_tables(c, defenders, intruders, nu);

    ScoreBounds sb;
    sb.q_mm = mm_assignment(c, defenders, intruders, nu).second;
    sb.q_mis = mis_assignment(c, defenders, intruders, nu).second;

    // degenerate single-defender regions: footprint is the whole perimeter
    for (std::size_t i = 0; i < nd; ++i) {
        LgrRegion r;
        r.i = r.j = static_cast<int>(i);
        r.arc_start = c.reduce(defenders[i]);
        r.arc_len = c.total_length();
        for (std::size_t a = 0; a < na; ++a)
            if (t.solo_v[i][a] > 0.0) r.members.push_back({static_cast<int>(a), t.solo_v[i][a]});
        r.n_intruders = static_cast<int>(r.members.size());
        r.n_defenders = static_cast<int>(nd);
        r.q = std::max(r.n_intruders - r.n_defenders, 0);
        r.q_ext = r.q;
        sb.regions.push_back(std::move(r));
    }
    // ordered pairs
    for (std::size_t i = 0; i < nd; ++i)
        for (std::size_t j = 0; j < nd; ++j) {
            if (i == j || pair_degenerate(c, defenders[i], defenders[j])) continue;
            LgrRegion r;
            r.i = static_cast<int>(i);
            r.j = static_cast<int>(j);
            r.arc_start = c.reduce(defenders[i]);
            r.arc_len = c.arc_distance_ccw(defenders[i], defenders[j]);
            for (std::size_t m = 0; m < nd; ++m)
                if (c.arc_distance_ccw(defenders[i], defenders[m]) <= r.arc_len + c.epsilon())
                    ++r.n_defenders;
            for (std::size_t a = 0; a < na; ++a) {
                if (!relevant_region(c, defenders[i], defenders[j], intruders[a], nu, t.fans[a]))
                    continue;  // other side of the afferent surfaces
                DuoEvaluation ev = evaluate_duo_ordered(c, defenders[i], defenders[j], intruders[a],
                                                        nu, t.fans[a]);
                if (ev.value > 0.0) {
                    r.members.push_back({static_cast<int>(a), ev.value});
                } else if (t.solo_v[i][a] > 0.0 && t.solo_v[j][a] > 0.0) {
                    r.pair_members.push_back({static_cast<int>(a), ev.value});
                }
            }
            r.n_intruders = static_cast<int>(r.members.size());
            r.n_pair_intruders = static_cast<int>(r.pair_members.size());
            r.q = std::max(r.n_intruders - r.n_defenders, 0);
            r.q_ext = r.q + r.n_pair_intruders;
            sb.regions.push_back(std::move(r));
        }

    std::vector<WeightedArc> arcs;
    for (std::size_t k = 0; k < sb.regions.size(); ++k) {
        const LgrRegion& r = sb.regions[k];
        if (r.q > 0)
            arcs.push_back({r.arc_start, r.arc_len, r.q, static_cast<int>(k)});
    }
    sb.q_lg = circular_mwis(arcs, c.total_length(), c.epsilon(), &sb.chosen_regions);
    return sb;
}

Assignment lgr_defense_assignment(const PerimeterCurve& c, const std::vector<ArcPos>& defenders,
                                  const std::vector<Vec2>& intruders, double nu) {
    std::size_t nd = defenders.size(), na = intruders.size();
    ScoreBounds sb = lgr_bounds(c, defenders, intruders, nu);
    InstanceTables t = build_tables(c, defenders, intruders, nu);

    // coverage: an intruder is stoppable if some defender wins 1v1 or some
    // pair holds it in its paired-defense region
    std::vector<char> coverable(na, 0);
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t d = 0; d < nd && !coverable[a]; ++d)
            if (t.solo_v[d][a] <= 0.0) coverable[a] = 1;
    for (const LgrRegion& r : sb.regions)
        for (const auto& [a, v] : r.pair_members) coverable[static_cast<std::size_t>(a)] = 1;

    // step 1: remove q_k intruders per chosen positive region, preferring
    // the ones nobody can stop, deepest (max V_ij) first
    std::vector<bool> dropped(na, false);
    for (int k : sb.chosen_regions) {
        LgrRegion& r = sb.regions[static_cast<std::size_t>(k)];
        if (r.q <= 0) continue;
        std::sort(r.members.begin(), r.members.end(), [&](const auto& a, const auto& b) {
            bool ca = coverable[static_cast<std::size_t>(a.first)];
            bool cb = coverable[static_cast<std::size_t>(b.first)];
            if (ca != cb) return !ca;  // uncoverable first
            return a.second > b.second;
        });
        int need = r.q;
        for (const auto& [a, v] : r.members) {
            if (need == 0) break;
            if (!dropped[static_cast<std::size_t>(a)]) {
                dropped[static_cast<std::size_t>(a)] = true;
                --need;
            }
        }
    }

    // step 2: pair assignments for R_pair intruders, greedily by V_ij
    struct Cand {
        int i, j, a;
        double v;
    };
    std::vector<Cand> cands;
    for (const LgrRegion& r : sb.regions) {
        if (r.i == r.j) continue;
        for (const auto& [a, v] : r.pair_members)
            if (!dropped[static_cast<std::size_t>(a)]) cands.push_back({r.i, r.j, a, v});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.v > b.v; });

    Assignment as;
    std::vector<bool> def_used(nd, false), int_used(na, false);
    for (const Cand& cd : cands) {
        if (def_used[static_cast<std::size_t>(cd.i)] || def_used[static_cast<std::size_t>(cd.j)] ||
            int_used[static_cast<std::size_t>(cd.a)])
            continue;
        as.edges.push_back({cd.i, cd.j, cd.a, false});
        def_used[static_cast<std::size_t>(cd.i)] = true;
        def_used[static_cast<std::size_t>(cd.j)] = true;
        int_used[static_cast<std::size_t>(cd.a)] = true;
    }

    // step 3: maximum matching on the remainder
    std::vector<int> dmap, amap;
    for (std::size_t d = 0; d < nd; ++d)
        if (!def_used[d]) dmap.push_back(static_cast<int>(d));
    for (std::size_t a = 0; a < na; ++a)
        if (!int_used[a] && !dropped[a]) amap.push_back(static_cast<int>(a));
    BipartiteMatcher matcher(static_cast<int>(dmap.size()), static_cast<int>(amap.size()));
    for (std::size_t di = 0; di < dmap.size(); ++di)
        for (std::size_t ai = 0; ai < amap.size(); ++ai)
            if (t.solo_v[static_cast<std::size_t>(dmap[di])][static_cast<std::size_t>(amap[ai])] <=
                0.0)
                matcher.add_edge(static_cast<int>(di), static_cast<int>(ai));
    std::vector<int> match = matcher.solve();
    for (std::size_t di = 0; di < dmap.size(); ++di)
        if (match[di] >= 0)
            as.edges.push_back({dmap[di], -1, amap[static_cast<std::size_t>(match[di])], false});

    add_secondary_pursuits(as, t, nd, na);
    fill_unassigned(as, na);
    return as;
}

std::vector<Vec2> intruder_team_greedy(const PerimeterCurve& c,
                                       const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu,
                                       std::vector<std::pair<int, int>>& pair_state) {
    validate_speed_ratio(nu);
    std::size_t nd = defenders.size(), na = intruders.size();
    if (pair_state.size() != na) pair_state.assign(na, {-1, -1});
    std::vector<Vec2> controls(na, Vec2{0, 0});
    if (nd == 0) return controls;

    std::vector<int> order(nd);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return c.reduce(defenders[static_cast<std::size_t>(a)]) <
               c.reduce(defenders[static_cast<std::size_t>(b)]);
    });

    for (std::size_t a = 0; a < na; ++a) {
        Vec2 x = intruders[a];
        TangentFan fan = c.tangent_points(x);

        // ccw-biased left flag per defender: afferent-surface states count
        // as left so that the pair ccw of the defender is selected
        std::vector<char> leftb(nd, 0);
        for (std::size_t d = 0; d < nd; ++d) {
            SoloEvaluation ev = evaluate_solo(c, defenders[d], x, nu, fan);
            leftb[d] = ev.region != SoloRegion::Right;
        }
        auto pair_contains = [&](int d1, int d2) {
            ArcPos s1 = defenders[static_cast<std::size_t>(d1)];
            ArcPos s2 = defenders[static_cast<std::size_t>(d2)];
            bool l1 = leftb[static_cast<std::size_t>(d1)];
            bool l2 = leftb[static_cast<std::size_t>(d2)];
            if (c.arc_distance_ccw(s1, s2) < 0.5 * c.total_length()) return l1 && !l2;
            return l1 || !l2;
        };

        int d1 = -1, d2 = -1;
        if (nd == 1) {
            d1 = 0;
        } else {
            auto [p1, p2] = pair_state[a];
            if (p1 >= 0 && p2 >= 0 && static_cast<std::size_t>(p1) < nd &&
                static_cast<std::size_t>(p2) < nd &&
                !pair_degenerate(c, defenders[static_cast<std::size_t>(p1)],
                                 defenders[static_cast<std::size_t>(p2)]) &&
                pair_contains(p1, p2)) {
                d1 = p1;  // hysteresis: previous pair still valid
                d2 = p2;
            } else {
                for (std::size_t k = 0; k < nd; ++k) {
                    int ca = order[k], cb = order[(k + 1) % nd];
                    if (pair_degenerate(c, defenders[static_cast<std::size_t>(ca)],
                                        defenders[static_cast<std::size_t>(cb)]))
                        continue;
                    if (pair_contains(ca, cb)) {
                        d1 = ca;
                        d2 = cb;
                        break;
                    }
                }
                if (d1 < 0) {
                    // no adjacent pair matched (ties everywhere): nearest midpoint
                    double best = std::numeric_limits<double>::infinity();
                    for (std::size_t k = 0; k < nd; ++k) {
                        int ca = order[k], cb = order[(k + 1) % nd];
                        if (pair_degenerate(c, defenders[static_cast<std::size_t>(ca)],
                                            defenders[static_cast<std::size_t>(cb)]))
                            continue;
                        ArcPos sa = defenders[static_cast<std::size_t>(ca)];
                        ArcPos sb2 = defenders[static_cast<std::size_t>(cb)];
                        ArcPos mid = c.reduce(sa + 0.5 * c.arc_distance_ccw(sa, sb2));
                        double dd = norm(c.point_at(mid) - x);
                        if (dd < best) {
                            best = dd;
                            d1 = ca;
                            d2 = cb;
                        }
                    }
                    if (d1 < 0) d1 = order[0];  // all defenders coincident
                }
            }
        }

        if (d2 < 0 || d1 == d2 ||
            pair_degenerate(c, defenders[static_cast<std::size_t>(d1)],
                            defenders[static_cast<std::size_t>(d2)])) {
            SoloEvaluation ev = evaluate_solo(c, defenders[static_cast<std::size_t>(d1)], x, nu, fan);
            ArcPos aim = (ev.region == SoloRegion::Left) ? ev.s_left : ev.s_right;
            controls[a] = normalized(c.point_at(aim) - x) * nu;
            pair_state[a] = {d1, -1};
        } else {
            DuoEvaluation ev = evaluate_duo(c, defenders[static_cast<std::size_t>(d1)],
                                            defenders[static_cast<std::size_t>(d2)], x, nu, fan);
            controls[a] = normalized(c.point_at(ev.s_opt) - x) * nu;
            pair_state[a] = {d1, d2};
        }
    }
    return controls;
}

std::vector<Vec2> intruder_team_greedy(const PerimeterCurve& c,
                                       const std::vector<ArcPos>& defenders,
                                       const std::vector<Vec2>& intruders, double nu) {
    std::vector<std::pair<int, int>> state(intruders.size(), {-1, -1});
    return intruder_team_greedy(c, defenders, intruders, nu, state);
}

}  // namespace pdg
