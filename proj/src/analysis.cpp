#include "stctopo/analysis.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>

#include "stctopo/errors.hpp"

namespace stctopo {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

CoverGraph cover_graph(const Topology& topo, const DirectedGraph& gmax, const LinkTable& links) {
    const std::size_t n = gmax.num_vertices();
    if (topo.graph.num_vertices() != n)
        throw ConfigError("cover_graph: topology and G_max differ in vertex count");

    // Broadcast cost needed for the kept out-neighbors.
    std::vector<double> base_cost(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : topo.graph.out_neighbors(u)) {
            if (!gmax.has_edge(u, v))
                throw ConfigError("cover_graph: topology edge outside E_max");
            base_cost[u] = std::max(base_cost[u], links.cost(u, v));
        }
    }

    // Every E_max edge one endpoint's broadcast already covers joins the
    // cover graph; >= keeps the kept edges themselves inside.
    CoverGraph cover{DirectedGraph(n), std::vector<double>(n, 0.0)};
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v : gmax.out_neighbors(u)) {
            if (v < u)
                continue;
            if (base_cost[u] >= links.cost(u, v) || base_cost[v] >= links.cost(v, u)) {
                cover.graph.add_edge(u, v);
                cover.graph.add_edge(v, u);
            }
        }
    }
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v : cover.graph.out_neighbors(u))
            cover.power[u] = std::max(cover.power[u], links.threshold(u, v));
    return cover;
}

CoverGraph initial_cover(const DirectedGraph& h, double ph) {
    return CoverGraph{h, std::vector<double>(h.num_vertices(), ph)};
}

bool is_connected(const DirectedGraph& g) {
    const std::size_t n = g.num_vertices();
    if (n <= 1)
        return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> queue{0};
    seen[0] = 1;
    std::size_t count = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId x = queue[head];
        auto visit = [&](NodeId y) {
            if (!seen[y]) {
                seen[y] = 1;
                ++count;
                queue.push_back(y);
            }
        };
        for (NodeId y : g.out_neighbors(x))
            visit(y);
        for (NodeId y : g.in_neighbors(x))
            visit(y);
    }
    return count == n;
}

std::size_t span(const DirectedGraph& g, NodeId u, NodeId v) {
    std::vector<NodeId> third;
    third.reserve(g.out_degree(u) + g.out_degree(v));
    auto collect = [&](NodeId e) {
        for (NodeId w : g.out_neighbors(e))
            if (w != u && w != v)
                third.push_back(w);
        for (NodeId w : g.in_neighbors(e))
            if (w != u && w != v)
                third.push_back(w);
    };
    collect(u);
    collect(v);
    std::sort(third.begin(), third.end());
    third.erase(std::unique(third.begin(), third.end()), third.end());
    return third.size();
}

std::size_t path_interference(const DirectedGraph& g, const std::vector<NodeId>& vertices) {
    // stamp-based distinct counting; this sits in the innermost loop of
    // the all-pairs metric sweeps
    thread_local std::vector<std::uint64_t> stamp;
    thread_local std::uint64_t current = 0;
    const std::size_t n = g.num_vertices();
    if (stamp.size() < n) {
        stamp.assign(n, 0);
        current = 0;
    }

    std::size_t total = 0;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const NodeId u = vertices[i];
        const NodeId v = vertices[i + 1];
        ++current;
        std::size_t count = 0;
        for (const NodeId e : {u, v}) {
            for (NodeId w : g.out_neighbors(e))
                if (w != u && w != v && stamp[w] != current) {
                    stamp[w] = current;
                    ++count;
                }
            for (NodeId w : g.in_neighbors(e))
                if (w != u && w != v && stamp[w] != current) {
                    stamp[w] = current;
                    ++count;
                }
        }
        total += count;
    }
    return total;
}

RouteField::RouteField(const CoverGraph& cover, NodeId target)
    : cover_(&cover), target_(target) {
    const DirectedGraph& g = cover.graph;
    const std::size_t n = g.num_vertices();

    // BFS layers toward the target (the graph is symmetric).
    hop_.assign(n, kUnreached);
    hop_[target] = 0;
    std::vector<NodeId> order{target};
    for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId x = order[head];
        for (NodeId y : g.out_neighbors(x)) {
            if (hop_[y] == kUnreached) {
                hop_[y] = hop_[x] + 1;
                order.push_back(y);
            }
        }
    }

    // Minimum energy among minimum-hop paths, in BFS order.
    hop_energy_.assign(n, kInf);
    hop_energy_[target] = 0.0;
    for (const NodeId v : order) {
        if (v == target)
            continue;
        double best = kInf;
        for (NodeId w : g.out_neighbors(v))
            if (hop_[w] + 1 == hop_[v])
                best = std::min(best, hop_energy_[w]);
        hop_energy_[v] = cover.node_cost(v) + best;
    }

    // Minimum energy overall: Dijkstra toward the target with the
    // transmitter-side node cost.
    energy_.assign(n, kInf);
    energy_[target] = 0.0;
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.emplace(0.0, target);
    while (!heap.empty()) {
        const auto [d, x] = heap.top();
        heap.pop();
        if (d > energy_[x])
            continue;
        for (NodeId v : g.out_neighbors(x)) {
            const double nd = cover.node_cost(v) + d;
            if (nd < energy_[v]) {
                energy_[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }

    energy_floor_.assign(n, kInf);
    for (NodeId v = 0; v < n; ++v)
        for (NodeId w : g.out_neighbors(v))
            energy_floor_[v] = std::min(energy_floor_[v], energy_[w]);

    // Hop count of the canonical min-energy path, processed in
    // increasing energy order so optimal successors are already done.
    energy_hops_.assign(n, kUnreached);
    energy_hops_[target] = 0;
    std::vector<NodeId> by_energy(n);
    std::iota(by_energy.begin(), by_energy.end(), NodeId{0});
    std::sort(by_energy.begin(), by_energy.end(), [&](NodeId a, NodeId b) {
        return energy_[a] != energy_[b] ? energy_[a] < energy_[b] : a < b;
    });
    for (const NodeId v : by_energy) {
        if (v == target || energy_[v] == kInf)
            continue;
        std::size_t best = kUnreached;
        for (NodeId w : g.out_neighbors(v))
            if (energy_[w] == energy_floor_[v] && energy_hops_[w] != kUnreached)
                best = std::min(best, energy_hops_[w]);
        if (best != kUnreached)
            energy_hops_[v] = best + 1;
    }
}

bool RouteField::reachable(NodeId s) const { return hop_[s] != kUnreached; }

PathResult RouteField::min_hop_from(NodeId s) const {
    if (!reachable(s))
        throw NoPath("min_hop_path: endpoints not connected");
    PathResult result;
    result.vertices.push_back(s);
    if (s == target_)
        return result;

    const DirectedGraph& g = cover_->graph;
    NodeId cur = s;
    while (cur != target_) {
        // successors preserving the minimum hop count, then minimum
        // energy, then the smallest id (lexicographic path)
        double best = kInf;
        for (NodeId w : g.out_neighbors(cur))
            if (hop_[w] + 1 == hop_[cur])
                best = std::min(best, hop_energy_[w]);
        NodeId next = cur;
        bool found = false;
        for (NodeId w : g.out_neighbors(cur)) {
            if (hop_[w] + 1 == hop_[cur] && hop_energy_[w] == best) {
                next = w;
                found = true;
                break; // neighbors are id-sorted
            }
        }
        if (!found)
            throw NoPath("min_hop_path: reconstruction failed");
        result.vertices.push_back(next);
        cur = next;
    }
    result.hops = hop_[s];
    result.energy = hop_energy_[s];
    result.interference = path_interference(g, result.vertices);
    return result;
}

PathResult RouteField::min_energy_from(NodeId s) const {
    if (!reachable(s))
        throw NoPath("min_energy_path: endpoints not connected");
    PathResult result;
    result.vertices.push_back(s);
    if (s == target_)
        return result;

    const DirectedGraph& g = cover_->graph;
    NodeId cur = s;
    while (cur != target_) {
        NodeId next = cur;
        bool found = false;
        for (NodeId w : g.out_neighbors(cur)) {
            if (energy_[w] == energy_floor_[cur] && energy_hops_[w] + 1 == energy_hops_[cur]) {
                next = w;
                found = true;
                break;
            }
        }
        if (!found)
            throw NoPath("min_energy_path: reconstruction failed");
        result.vertices.push_back(next);
        cur = next;
    }
    result.hops = energy_hops_[s];
    result.energy = energy_[s];
    result.interference = path_interference(g, result.vertices);
    return result;
}

double RouteField::min_energy_cost(NodeId s) const {
    if (!reachable(s))
        throw NoPath("min_energy_cost: endpoints not connected");
    return energy_[s];
}

PathResult min_hop_path(const CoverGraph& cover, NodeId s, NodeId t) {
    return RouteField(cover, t).min_hop_from(s);
}

PathResult min_energy_path(const CoverGraph& cover, NodeId s, NodeId t) {
    return RouteField(cover, t).min_energy_from(s);
}

} // namespace stctopo
