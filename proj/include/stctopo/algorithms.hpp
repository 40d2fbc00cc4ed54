#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "stctopo/net_model.hpp"
#include "stctopo/pathloss.hpp"

namespace stctopo {

/// Output of a topology control algorithm: an edge subset of G_max plus
/// the label and parameters that produced it.
struct Topology {
    DirectedGraph graph;
    std::string algorithm;
    std::optional<int> k;
    std::optional<double> alpha;
};

/// A one- or two-hop path kept as its transmission tuples. `via` is the
/// intermediate node of a two-hop path.
struct StepPath {
    std::array<TransmissionTuple, 2> hops{};
    int hop_count = 0;
    std::optional<NodeId> via;

    const TransmissionTuple& max_tuple() const {
        if (hop_count == 2 && hops[0] < hops[1])
            return hops[1];
        return hops[0];
    }
};

/// The two cheapest (by max tuple) paths of at most two hops to one
/// target. Two entries are kept because the best path may run through
/// the very node whose edge is being judged.
struct PairOfPaths {
    std::optional<StepPath> first;
    std::optional<StepPath> second;

    /// Best stored path that does not pass through v, or nullptr.
    const StepPath* first_avoiding(NodeId v) const {
        if (first && first->via != v)
            return &*first;
        if (second && second->via != v)
            return &*second;
        return nullptr;
    }
};

enum class PathDirection { Forward, Backward };

/// Exactly what one node holds after the broadcast round: its own tuple
/// lists and those received from each G_max neighbor.
struct LocalView {
    NodeId self = 0;
    TupleLists own;
    std::vector<std::pair<NodeId, TupleLists>> neighbors;
};

using PairOfPathsMap = std::unordered_map<NodeId, PairOfPaths>;

LocalView make_local_view(NodeId u, const DirectedGraph& gmax, const LinkTable& links);

/// For every node reachable from self (forward) or reaching self
/// (backward) within two hops, the two minimal-max-tuple paths.
PairOfPathsMap build_pair_of_paths(const LocalView& view, PathDirection direction);

/// One node's edge selection, lines 08-34 of the distributed procedure.
/// Returns the out-neighbors whose edges the node keeps.
std::vector<NodeId> stc_local(const LocalView& view,
                              const PairOfPathsMap& pairs_fwd,
                              const PairOfPathsMap& pairs_bwd);

Topology run_stc(const DirectedGraph& gmax, const LinkTable& links);

/// k-hop generalization: removes (u,v) iff a path of at most k hops
/// exists in each direction with every hop tuple below the direct
/// edge's tuple. k=2 matches DRNG, k=3 matches STC.
Topology run_khop(const DirectedGraph& gmax, const LinkTable& links, int k);

Topology run_drng(const DirectedGraph& gmax, const LinkTable& links);
Topology run_dlss(const DirectedGraph& gmax, const LinkTable& links);
Topology run_smecn(const DirectedGraph& gmax, const LinkTable& links);

Topology run_cbtc(const DirectedGraph& gmax, const LinkTable& links,
                  const std::vector<Node>& nodes, double alpha);
Topology run_opt_cbtc(const DirectedGraph& gmax, const LinkTable& links,
                      const std::vector<Node>& nodes, double alpha);

Topology run_mst(const DirectedGraph& gmax, const LinkTable& links);

/// Shortest-path cost from s to t under per-link energies C(u,v); the
/// reference lower bound, not a topology.
double minreach_cost(const DirectedGraph& gmax, const LinkTable& links, NodeId s, NodeId t);

/// Dispatch by name ("stc", "khop", "drng", "dlss", "smecn", "cbtc",
/// "opt-cbtc", "mst"). khop requires k; the CBTC variants take alpha
/// (default 5*pi/6).
Topology run_algorithm(const std::string& name, const Network& net, const DirectedGraph& gmax,
                       std::optional<int> k = std::nullopt,
                       std::optional<double> alpha = std::nullopt);

// CBTC building blocks, exposed for direct testing.

/// Smallest neighbor threshold at which the reachable neighbors leave
/// no angular gap >= alpha; falls back to the node's max power when
/// coverage is unattainable. attained reports which case applied.
double cbtc_power(NodeId u, const DirectedGraph& gmax, const LinkTable& links,
                  const std::vector<Node>& nodes, double alpha, bool* attained = nullptr);

/// Shrink-back: smallest neighbor threshold whose covered angular
/// measure (union of alpha/2-half-width arcs) matches the coverage at
/// max power.
double shrink_back_power(NodeId u, const DirectedGraph& gmax, const LinkTable& links,
                         const std::vector<Node>& nodes, double alpha);

/// Pairwise edge removal at u: among reachable out-neighbors, any pair
/// closer than pi/3 in direction loses its larger-tuple edge, iterated
/// to a fixpoint in descending tuple order.
std::vector<NodeId> pairwise_edge_removal(NodeId u, const std::vector<NodeId>& reachable,
                                          const LinkTable& links, const std::vector<Node>& nodes);

} // namespace stctopo
