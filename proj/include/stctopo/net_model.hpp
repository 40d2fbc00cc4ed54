#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stctopo {

using NodeId = std::uint32_t;

/// A radio node: unique id, planar position in meters, maximum transmit
/// power in linear units.
struct Node {
    NodeId id = 0;
    double x = 0.0;
    double y = 0.0;
    double max_power = 0.0;
};

/// Transmission tuple t(u,v) = (P_min(u,v), sender id, receiver id).
///
/// Tuples are strictly totally ordered: lexicographic on
/// (power, sender, receiver), except that a self tuple t(u,u) orders
/// below every tuple between distinct nodes.
struct TransmissionTuple {
    double power = 0.0;
    NodeId sender = 0;
    NodeId receiver = 0;

    friend bool operator==(const TransmissionTuple&, const TransmissionTuple&) = default;
};

std::strong_ordering compare_tuples(const TransmissionTuple& a, const TransmissionTuple& b);

inline bool operator<(const TransmissionTuple& a, const TransmissionTuple& b) {
    return compare_tuples(a, b) == std::strong_ordering::less;
}

/// Per-ordered-pair link data: transmission power threshold P_min(u,v),
/// path loss exponent gamma(u,v) and geometric distance d(u,v).
/// The energy cost C(u,v) equals the threshold (unit transmission time).
class LinkTable {
public:
    LinkTable() = default;
    explicit LinkTable(std::size_t n);

    std::size_t size() const { return n_; }

    double threshold(NodeId u, NodeId v) const { return threshold_[index(u, v)]; }
    double cost(NodeId u, NodeId v) const { return threshold_[index(u, v)]; }
    double gamma(NodeId u, NodeId v) const { return gamma_[index(u, v)]; }
    double distance(NodeId u, NodeId v) const { return distance_[index(u, v)]; }

    void set(NodeId u, NodeId v, double threshold, double gamma, double distance);

    TransmissionTuple tuple(NodeId u, NodeId v) const {
        return TransmissionTuple{threshold(u, v), u, v};
    }

    /// true when threshold and gamma coincide for every (u,v)/(v,u) pair.
    bool is_symmetric() const;

private:
    std::size_t index(NodeId u, NodeId v) const;

    std::size_t n_ = 0;
    std::vector<double> threshold_;
    std::vector<double> gamma_;
    std::vector<double> distance_;
};

/// Directed graph over dense node ids 0..n-1. Keeps sorted adjacency in
/// both directions plus a membership matrix for O(1) edge queries.
class DirectedGraph {
public:
    DirectedGraph() = default;
    explicit DirectedGraph(std::size_t n);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edge_count_; }

    bool has_edge(NodeId u, NodeId v) const { return present_[n_ * u + v] != 0; }
    void add_edge(NodeId u, NodeId v);
    void remove_edge(NodeId u, NodeId v);

    const std::vector<NodeId>& out_neighbors(NodeId u) const { return out_[u]; }
    const std::vector<NodeId>& in_neighbors(NodeId u) const { return in_[u]; }
    std::size_t out_degree(NodeId u) const { return out_[u].size(); }

    /// All directed edges sorted by (u, v).
    std::vector<std::pair<NodeId, NodeId>> edges() const;

    bool is_symmetric() const;

    friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

private:
    std::size_t n_ = 0;
    std::size_t edge_count_ = 0;
    std::vector<std::vector<NodeId>> out_;
    std::vector<std::vector<NodeId>> in_;
    std::vector<std::uint8_t> present_;
};

/// The tuple lists a node compiles before running topology control:
/// one out tuple and one in tuple per G_max neighbor.
struct TupleLists {
    std::vector<TransmissionTuple> out_list;
    std::vector<TransmissionTuple> in_list;
};

/// G_max: directed edge (u,v) present iff P_min(u,v) <= P_u and
/// P_min(v,u) <= P_v. Symmetric by construction.
DirectedGraph build_gmax(const std::vector<Node>& nodes, const LinkTable& links);

/// Smallest common power p at which the graph with edge (u,v) iff
/// max(P_min(u,v), P_min(v,u)) <= p is connected. Computed as the
/// bottleneck edge weight of the minimum spanning tree of the complete
/// graph under w(u,v) = max(P_min(u,v), P_min(v,u)).
double compute_ph(const std::vector<Node>& nodes, const LinkTable& links);

/// Graph generated by every node transmitting at power p: edges (u,v)
/// and (v,u) present iff max(P_min(u,v), P_min(v,u)) <= p.
DirectedGraph build_initial_graph(const LinkTable& links, double p);

/// outTupleList(u) = { t(u,v) : (u,v) in E_max },
/// inTupleList(u)  = { t(v,u) : (v,u) in E_max }.
TupleLists compile_tuple_lists(NodeId u, const DirectedGraph& gmax, const LinkTable& links);

} // namespace stctopo
