#include "stctopo/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "stctopo/errors.hpp"

namespace stctopo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i)
            parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent[a] = b;
        return true;
    }
};

double azimuth(const Node& from, const Node& to) {
    return std::atan2(to.y - from.y, to.x - from.x);
}

/// Smallest angle between two directions, in [0, pi].
double angle_between(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kTwoPi);
    return d > std::numbers::pi ? kTwoPi - d : d;
}

/// Largest circular gap between the given directions (2*pi when fewer
/// than two directions are present).
double max_circular_gap(std::vector<double> angles) {
    if (angles.empty())
        return kTwoPi;
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + kTwoPi - angles.back();
    for (std::size_t i = 1; i < angles.size(); ++i)
        max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
    return max_gap;
}

/// Measure of the union of arcs of half-width alpha/2 centered on the
/// given directions.
double coverage_measure(const std::vector<double>& angles, double alpha) {
    if (angles.empty() || alpha <= 0.0)
        return 0.0;
    if (alpha >= kTwoPi)
        return kTwoPi;
    std::vector<std::pair<double, double>> arcs;
    arcs.reserve(angles.size() + 1);
    for (double a : angles) {
        double lo = std::fmod(a - alpha / 2.0, kTwoPi);
        if (lo < 0.0)
            lo += kTwoPi;
        const double hi = lo + alpha;
        if (hi <= kTwoPi) {
            arcs.emplace_back(lo, hi);
        } else {
            arcs.emplace_back(lo, kTwoPi);
            arcs.emplace_back(0.0, hi - kTwoPi);
        }
    }
    std::sort(arcs.begin(), arcs.end());
    double total = 0.0;
    double cur_lo = arcs.front().first;
    double cur_hi = arcs.front().second;
    for (std::size_t i = 1; i < arcs.size(); ++i) {
        if (arcs[i].first <= cur_hi) {
            cur_hi = std::max(cur_hi, arcs[i].second);
        } else {
            total += cur_hi - cur_lo;
            cur_lo = arcs[i].first;
            cur_hi = arcs[i].second;
        }
    }
    total += cur_hi - cur_lo;
    return std::min(total, kTwoPi);
}

void require_uniform_exponents(const LinkTable& links) {
    const std::size_t n = links.size();
    if (n < 2)
        return;
    const double ref = links.gamma(0, 1);
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = 0; v < n; ++v)
            if (u != v && links.gamma(u, v) != ref)
                throw AssumptionViolation("CBTC requires a uniform path loss exponent");
}

/// Symmetric edge weight used by the spanning tree algorithms.
TransmissionTuple undirected_weight(const LinkTable& links, NodeId a, NodeId b) {
    const TransmissionTuple ab = links.tuple(a, b);
    const TransmissionTuple ba = links.tuple(b, a);
    return ab < ba ? ab : ba;
}

} // namespace

LocalView make_local_view(NodeId u, const DirectedGraph& gmax, const LinkTable& links) {
    LocalView view;
    view.self = u;
    view.own = compile_tuple_lists(u, gmax, links);
    view.neighbors.reserve(gmax.out_degree(u));
    for (NodeId n : gmax.out_neighbors(u))
        view.neighbors.emplace_back(n, compile_tuple_lists(n, gmax, links));
    return view;
}

PairOfPathsMap build_pair_of_paths(const LocalView& view, PathDirection direction) {
    PairOfPathsMap result;
    auto consider = [&result](NodeId target, const StepPath& path) {
        PairOfPaths& pair = result[target];
        if (!pair.first) {
            pair.first = path;
        } else if (path.max_tuple() < pair.first->max_tuple()) {
            pair.second = pair.first;
            pair.first = path;
        } else if (!pair.second || path.max_tuple() < pair.second->max_tuple()) {
            pair.second = path;
        }
    };

    if (direction == PathDirection::Forward) {
        std::unordered_map<NodeId, TransmissionTuple> out_to;
        for (const TransmissionTuple& t : view.own.out_list) {
            out_to.emplace(t.receiver, t);
            consider(t.receiver, StepPath{{t, {}}, 1, std::nullopt});
        }
        for (const auto& [m, lists] : view.neighbors) {
            const TransmissionTuple& t_um = out_to.at(m);
            for (const TransmissionTuple& t_mn : lists.out_list) {
                if (t_mn.receiver == view.self)
                    continue;
                consider(t_mn.receiver, StepPath{{t_um, t_mn}, 2, m});
            }
        }
    } else {
        std::unordered_map<NodeId, TransmissionTuple> in_from;
        for (const TransmissionTuple& t : view.own.in_list) {
            in_from.emplace(t.sender, t);
            consider(t.sender, StepPath{{t, {}}, 1, std::nullopt});
        }
        for (const auto& [m, lists] : view.neighbors) {
            const TransmissionTuple& t_mu = in_from.at(m);
            for (const TransmissionTuple& t_nm : lists.in_list) {
                if (t_nm.sender == view.self)
                    continue;
                consider(t_nm.sender, StepPath{{t_nm, t_mu}, 2, m});
            }
        }
    }
    return result;
}

std::vector<NodeId> stc_local(const LocalView& view,
                              const PairOfPathsMap& pairs_fwd,
                              const PairOfPathsMap& pairs_bwd) {
    std::unordered_map<NodeId, const TupleLists*> neighbor_lists;
    neighbor_lists.reserve(view.neighbors.size());
    for (const auto& [id, lists] : view.neighbors)
        neighbor_lists.emplace(id, &lists);
    std::unordered_map<NodeId, TransmissionTuple> reverse_tuple; // sender -> t(sender, self)
    for (const TransmissionTuple& t : view.own.in_list)
        reverse_tuple.emplace(t.sender, t);

    std::vector<TransmissionTuple> out = view.own.out_list;
    std::sort(out.begin(), out.end());
    const std::size_t degree = out.size();

    std::vector<NodeId> kept;
    kept.reserve(degree);
    for (std::size_t round = 0; round + 1 < degree; ++round) {
        const TransmissionTuple t_uv = out.back();
        out.pop_back();
        const NodeId v = t_uv.receiver;
        const TupleLists& v_lists = *neighbor_lists.at(v);
        const TransmissionTuple t_vu = reverse_tuple.at(v);

        // Forward: a node i with t(i,v) < t(u,v) reachable from u in at
        // most two hops, avoiding v, with every hop tuple below t(u,v).
        bool no_forward = true;
        for (const TransmissionTuple& t_iv : v_lists.in_list) {
            if (!(t_iv < t_uv))
                continue;
            const auto it = pairs_fwd.find(t_iv.sender);
            if (it == pairs_fwd.end())
                continue; // more than two hops away
            const StepPath* p = it->second.first_avoiding(v);
            if (p && p->max_tuple() < t_uv) {
                no_forward = false;
                break;
            }
        }

        // Backward: v reaches some i with t(v,i) < t(v,u), and i reaches
        // u within two hops avoiding v with tuples below t(v,u).
        bool no_backward = true;
        for (const TransmissionTuple& t_vi : v_lists.out_list) {
            if (!(t_vi < t_vu))
                continue;
            const auto it = pairs_bwd.find(t_vi.receiver);
            if (it == pairs_bwd.end())
                continue;
            const StepPath* p = it->second.first_avoiding(v);
            if (p && p->max_tuple() < t_vu) {
                no_backward = false;
                break;
            }
        }

        if (no_forward || no_backward)
            kept.push_back(v);
    }
    // The smallest-tuple neighbor is never examined and is always kept.
    if (!out.empty())
        kept.push_back(out.front().receiver);
    return kept;
}

Topology run_stc(const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        const LocalView view = make_local_view(u, gmax, links);
        const PairOfPathsMap fwd = build_pair_of_paths(view, PathDirection::Forward);
        const PairOfPathsMap bwd = build_pair_of_paths(view, PathDirection::Backward);
        for (NodeId v : stc_local(view, fwd, bwd))
            g.add_edge(u, v);
    }
    return Topology{std::move(g), "stc", std::nullopt, std::nullopt};
}

Topology run_khop(const DirectedGraph& gmax, const LinkTable& links, int k) {
    if (k < 2)
        throw ConfigError("khop requires k >= 2");
    const std::size_t n = gmax.num_vertices();
    DirectedGraph g(n);

    std::vector<std::uint32_t> stamp(n, 0);
    std::vector<int> depth(n, 0);
    std::vector<NodeId> queue;
    queue.reserve(n);
    std::uint32_t current = 0;

    auto witness = [&](NodeId u, NodeId v) {
        const TransmissionTuple limit = links.tuple(u, v);
        ++current;
        queue.clear();
        stamp[u] = current;
        depth[u] = 0;
        queue.push_back(u);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId x = queue[head];
            if (depth[x] >= k)
                continue;
            for (NodeId y : gmax.out_neighbors(x)) {
                if (stamp[y] == current)
                    continue;
                if (!(links.tuple(x, y) < limit))
                    continue;
                if (y == v)
                    return true;
                stamp[y] = current;
                depth[y] = depth[x] + 1;
                queue.push_back(y);
            }
        }
        return false;
    };

    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            if (!(witness(u, v) && witness(v, u))) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return Topology{std::move(g), "khop", k, std::nullopt};
}

Topology run_drng(const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    DirectedGraph g(n);
    auto rule = [&](NodeId a, NodeId b) {
        const TransmissionTuple t_ab = links.tuple(a, b);
        for (NodeId m : gmax.out_neighbors(a)) {
            if (m == b || !gmax.has_edge(m, b))
                continue;
            if (links.tuple(a, m) < t_ab && links.tuple(m, b) < t_ab)
                return true;
        }
        return false;
    };
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            if (!(rule(u, v) && rule(v, u))) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return Topology{std::move(g), "drng", std::nullopt, std::nullopt};
}

Topology run_smecn(const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    DirectedGraph g(n);
    auto rule = [&](NodeId a, NodeId b) {
        const double c_ab = links.cost(a, b);
        for (NodeId m : gmax.out_neighbors(a)) {
            if (m == b || !gmax.has_edge(m, b))
                continue;
            if (links.cost(a, m) + links.cost(m, b) < c_ab)
                return true;
        }
        return false;
    };
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            if (!(rule(u, v) && rule(v, u))) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return Topology{std::move(g), "smecn", std::nullopt, std::nullopt};
}

Topology run_dlss(const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        std::vector<NodeId> local;
        local.reserve(gmax.out_degree(u) + 1);
        local.push_back(u);
        for (NodeId v : gmax.out_neighbors(u))
            local.push_back(v);
        std::sort(local.begin(), local.end());

        struct LocalEdge {
            TransmissionTuple weight;
            std::size_t a, b; // indices into local
        };
        std::vector<LocalEdge> edges;
        for (std::size_t i = 0; i < local.size(); ++i)
            for (std::size_t j = i + 1; j < local.size(); ++j)
                if (gmax.has_edge(local[i], local[j]))
                    edges.push_back({undirected_weight(links, local[i], local[j]), i, j});
        std::sort(edges.begin(), edges.end(),
                  [](const LocalEdge& x, const LocalEdge& y) { return x.weight < y.weight; });

        UnionFind uf(local.size());
        const auto u_index = static_cast<std::size_t>(
            std::lower_bound(local.begin(), local.end(), u) - local.begin());
        for (const LocalEdge& e : edges) {
            if (!uf.unite(e.a, e.b))
                continue;
            if (e.a == u_index)
                g.add_edge(u, local[e.b]);
            else if (e.b == u_index)
                g.add_edge(u, local[e.a]);
        }
    }
    return Topology{std::move(g), "dlss", std::nullopt, std::nullopt};
}

double cbtc_power(NodeId u, const DirectedGraph& gmax, const LinkTable& links,
                  const std::vector<Node>& nodes, double alpha, bool* attained) {
    if (attained)
        *attained = false;
    const auto& nbrs = gmax.out_neighbors(u);
    if (nbrs.empty())
        return nodes[u].max_power;

    struct Entry {
        double threshold;
        double direction;
        NodeId id;
    };
    std::vector<Entry> entries;
    entries.reserve(nbrs.size());
    for (NodeId v : nbrs)
        entries.push_back({links.threshold(u, v), azimuth(nodes[u], nodes[v]), v});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.threshold != b.threshold ? a.threshold < b.threshold : a.id < b.id;
    });

    std::vector<double> angles;
    angles.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        const double p = entries[i].threshold;
        while (i < entries.size() && entries[i].threshold == p) {
            angles.push_back(entries[i].direction);
            ++i;
        }
        if (max_circular_gap(angles) < alpha) {
            if (attained)
                *attained = true;
            return p;
        }
    }
    return nodes[u].max_power;
}

double shrink_back_power(NodeId u, const DirectedGraph& gmax, const LinkTable& links,
                         const std::vector<Node>& nodes, double alpha) {
    constexpr double kMeasureTol = 1e-9;
    const auto& nbrs = gmax.out_neighbors(u);
    if (nbrs.empty())
        return nodes[u].max_power;

    struct Entry {
        double threshold;
        double direction;
        NodeId id;
    };
    std::vector<Entry> entries;
    entries.reserve(nbrs.size());
    std::vector<double> all_angles;
    all_angles.reserve(nbrs.size());
    for (NodeId v : nbrs) {
        entries.push_back({links.threshold(u, v), azimuth(nodes[u], nodes[v]), v});
        all_angles.push_back(entries.back().direction);
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.threshold != b.threshold ? a.threshold < b.threshold : a.id < b.id;
    });
    const double target = coverage_measure(all_angles, alpha);

    std::vector<double> angles;
    angles.reserve(entries.size());
    std::size_t i = 0;
    while (i < entries.size()) {
        const double p = entries[i].threshold;
        while (i < entries.size() && entries[i].threshold == p) {
            angles.push_back(entries[i].direction);
            ++i;
        }
        if (coverage_measure(angles, alpha) >= target - kMeasureTol)
            return p;
    }
    return nodes[u].max_power;
}

std::vector<NodeId> pairwise_edge_removal(NodeId u, const std::vector<NodeId>& reachable,
                                          const LinkTable& links, const std::vector<Node>& nodes) {
    struct Cand {
        TransmissionTuple tuple;
        double direction;
        NodeId id;
        bool alive;
    };
    std::vector<Cand> cands;
    cands.reserve(reachable.size());
    for (NodeId v : reachable)
        cands.push_back({links.tuple(u, v), azimuth(nodes[u], nodes[v]), v, true});
    std::sort(cands.begin(), cands.end(),
              [](const Cand& a, const Cand& b) { return a.tuple < b.tuple; });

    constexpr double kThird = std::numbers::pi / 3.0;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = cands.size(); i-- > 0;) { // descending tuple order
            if (!cands[i].alive)
                continue;
            for (std::size_t j = 0; j < i; ++j) { // partners with smaller tuples
                if (!cands[j].alive)
                    continue;
                if (angle_between(cands[i].direction, cands[j].direction) < kThird) {
                    cands[i].alive = false;
                    changed = true;
                    break;
                }
            }
        }
    }
    std::vector<NodeId> result;
    for (const Cand& c : cands)
        if (c.alive)
            result.push_back(c.id);
    std::sort(result.begin(), result.end());
    return result;
}

Topology run_cbtc(const DirectedGraph& gmax, const LinkTable& links,
                  const std::vector<Node>& nodes, double alpha) {
    require_uniform_exponents(links);
    const std::size_t n = gmax.num_vertices();
    std::vector<double> power(n);
    for (NodeId u = 0; u < n; ++u)
        power[u] = cbtc_power(u, gmax, links, nodes, alpha);

    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            // removed only when neither endpoint reaches the other
            if (links.threshold(u, v) <= power[u] || links.threshold(v, u) <= power[v]) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return Topology{std::move(g), "cbtc", std::nullopt, alpha};
}

Topology run_opt_cbtc(const DirectedGraph& gmax, const LinkTable& links,
                      const std::vector<Node>& nodes, double alpha) {
    require_uniform_exponents(links);
    const std::size_t n = gmax.num_vertices();

    std::vector<std::vector<NodeId>> retained(n);
    for (NodeId u = 0; u < n; ++u) {
        bool attained = false;
        double p = cbtc_power(u, gmax, links, nodes, alpha, &attained);
        if (!attained)
            p = shrink_back_power(u, gmax, links, nodes, alpha);
        std::vector<NodeId> reach;
        for (NodeId v : gmax.out_neighbors(u))
            if (links.threshold(u, v) <= p)
                reach.push_back(v);
        retained[u] = pairwise_edge_removal(u, reach, links, nodes);
    }

    auto keeps = [&](NodeId a, NodeId b) {
        return std::binary_search(retained[a].begin(), retained[a].end(), b);
    };
    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            if (keeps(u, v) || keeps(v, u)) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return Topology{std::move(g), "opt-cbtc", std::nullopt, alpha};
}

Topology run_mst(const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    struct Edge {
        TransmissionTuple weight;
        NodeId a, b;
    };
    std::vector<Edge> edges;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : gmax.out_neighbors(u))
            if (u < v)
                edges.push_back({undirected_weight(links, u, v), u, v});
    std::sort(edges.begin(), edges.end(),
              [](const Edge& x, const Edge& y) { return x.weight < y.weight; });

    DirectedGraph g(n);
    UnionFind uf(n);
    std::size_t tree_edges = 0;
    for (const Edge& e : edges) {
        if (uf.unite(e.a, e.b)) {
            g.add_edge(e.a, e.b);
            g.add_edge(e.b, e.a);
            ++tree_edges;
        }
    }
    if (n > 0 && tree_edges != n - 1)
        throw DisconnectedInput("run_mst: input graph is disconnected");
    return Topology{std::move(g), "mst", std::nullopt, std::nullopt};
}

double minreach_cost(const DirectedGraph& gmax, const LinkTable& links, NodeId s, NodeId t) {
    if (s == t)
        return 0.0;
    const std::size_t n = gmax.num_vertices();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, kInf);
    dist[s] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, s);
    while (!heap.empty()) {
        const auto [d, x] = heap.top();
        heap.pop();
        if (d > dist[x])
            continue;
        if (x == t)
            return d;
        for (NodeId y : gmax.out_neighbors(x)) {
            const double nd = d + links.cost(x, y);
            if (nd < dist[y]) {
                dist[y] = nd;
                heap.emplace(nd, y);
            }
        }
    }
    throw NoPath("minreach_cost: no path between the endpoints");
}

Topology run_algorithm(const std::string& name, const Network& net, const DirectedGraph& gmax,
                       std::optional<int> k, std::optional<double> alpha) {
    constexpr double kDefaultAlpha = 5.0 * std::numbers::pi / 6.0;
    if (name == "stc")
        return run_stc(gmax, net.links);
    if (name == "khop") {
        if (!k)
            throw ConfigError("khop requires k");
        return run_khop(gmax, net.links, *k);
    }
    if (name == "drng")
        return run_drng(gmax, net.links);
    if (name == "dlss")
        return run_dlss(gmax, net.links);
    if (name == "smecn")
        return run_smecn(gmax, net.links);
    if (name == "cbtc")
        return run_cbtc(gmax, net.links, net.nodes, alpha.value_or(kDefaultAlpha));
    if (name == "opt-cbtc")
        return run_opt_cbtc(gmax, net.links, net.nodes, alpha.value_or(kDefaultAlpha));
    if (name == "mst")
        return run_mst(gmax, net.links);
    throw ConfigError("unknown algorithm: " + name);
}

} // namespace stctopo
