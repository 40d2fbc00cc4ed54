#pragma once

#include <cstddef>
#include <vector>

#include "stctopo/algorithms.hpp"
#include "stctopo/net_model.hpp"

namespace stctopo {

/// The graph induced by nodes broadcasting at their post-control
/// omni-directional powers, with the per-node broadcast power P_T(u).
/// The broadcast cost C_T(u) equals the power (unit transmission time).
struct CoverGraph {
    DirectedGraph graph;
    std::vector<double> power;

    double node_power(NodeId u) const { return power[u]; }
    double node_cost(NodeId u) const { return power[u]; }
};

/// Builds the cover graph of a topology: first the broadcast cost to
/// the kept neighbors, then every E_max edge one endpoint's broadcast
/// already covers, then the powers over the result.
CoverGraph cover_graph(const Topology& topo, const DirectedGraph& gmax, const LinkTable& links);

/// The metrics baseline: the initial graph H with every node
/// transmitting at the common connectivity power P_H.
CoverGraph initial_cover(const DirectedGraph& h, double ph);

/// True iff one connected component spans all vertices (edges treated
/// as undirected; production graphs are symmetric).
bool is_connected(const DirectedGraph& g);

struct PathResult {
    std::vector<NodeId> vertices;
    std::size_t hops = 0;
    double energy = 0.0;       // sum of C_T(i) over transmitting nodes
    std::size_t interference = 0; // sum of span(e) over path edges
};

/// Number of third-party nodes adjacent to either endpoint of (u,v);
/// the nodes silenced by a transmission on that edge.
std::size_t span(const DirectedGraph& g, NodeId u, NodeId v);

std::size_t path_interference(const DirectedGraph& g, const std::vector<NodeId>& vertices);

/// Per-target routing tables: minimum-hop and minimum-energy paths from
/// every source toward one target, with deterministic tie-breaking
/// (hops, energy, lexicographic vertex sequence) respectively
/// (energy, hops, lexicographic). Built once per target for all-pairs
/// sweeps.
class RouteField {
public:
    RouteField(const CoverGraph& cover, NodeId target);

    NodeId target() const { return target_; }
    bool reachable(NodeId s) const;

    PathResult min_hop_from(NodeId s) const;    // throws NoPath
    PathResult min_energy_from(NodeId s) const; // throws NoPath

    double min_energy_cost(NodeId s) const; // energy only, no reconstruction

private:
    const CoverGraph* cover_;
    NodeId target_;
    std::vector<std::size_t> hop_;         // BFS distance to target
    std::vector<double> hop_energy_;       // min energy among min-hop paths
    std::vector<double> energy_;           // min energy to target
    std::vector<double> energy_floor_;     // min over neighbors of energy_
    std::vector<std::size_t> energy_hops_; // hops of the canonical min-energy path
};

/// Among all minimum-hop s->t paths the one with minimum total energy,
/// energy ties broken by lexicographic vertex sequence.
PathResult min_hop_path(const CoverGraph& cover, NodeId s, NodeId t);

/// Shortest path under directed edge weight w(u,v) = C_T(u).
PathResult min_energy_path(const CoverGraph& cover, NodeId s, NodeId t);

} // namespace stctopo
