#include "stctopo/net_model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "stctopo/errors.hpp"

namespace stctopo {

std::strong_ordering compare_tuples(const TransmissionTuple& a, const TransmissionTuple& b) {
    const bool a_self = a.sender == a.receiver;
    const bool b_self = b.sender == b.receiver;
    if (a_self != b_self)
        return a_self ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.power != b.power)
        return a.power < b.power ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.sender != b.sender)
        return a.sender < b.sender ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.receiver != b.receiver)
        return a.receiver < b.receiver ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

LinkTable::LinkTable(std::size_t n)
    : n_(n),
      threshold_(n * n, 0.0),
      gamma_(n * n, 0.0),
      distance_(n * n, 0.0) {}

std::size_t LinkTable::index(NodeId u, NodeId v) const {
    if (u >= n_ || v >= n_ || u == v)
        throw std::out_of_range("LinkTable: bad ordered pair");
    return n_ * u + v;
}

void LinkTable::set(NodeId u, NodeId v, double threshold, double gamma, double distance) {
    if (threshold <= 0.0)
        throw ConfigError("LinkTable: threshold must be positive");
    const std::size_t i = index(u, v);
    threshold_[i] = threshold;
    gamma_[i] = gamma;
    distance_[i] = distance;
}

bool LinkTable::is_symmetric() const {
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v = u + 1; v < n_; ++v)
            if (threshold(u, v) != threshold(v, u) || gamma(u, v) != gamma(v, u))
                return false;
    return true;
}

DirectedGraph::DirectedGraph(std::size_t n)
    : n_(n), out_(n), in_(n), present_(n * n, 0) {}

namespace {

void insert_sorted(std::vector<NodeId>& list, NodeId v) {
    list.insert(std::lower_bound(list.begin(), list.end(), v), v);
}

void erase_sorted(std::vector<NodeId>& list, NodeId v) {
    list.erase(std::lower_bound(list.begin(), list.end(), v));
}

} // namespace

void DirectedGraph::add_edge(NodeId u, NodeId v) {
    if (u >= n_ || v >= n_)
        throw std::out_of_range("DirectedGraph: vertex out of range");
    if (u == v)
        throw std::invalid_argument("DirectedGraph: self loops not allowed");
    if (has_edge(u, v))
        return;
    present_[n_ * u + v] = 1;
    insert_sorted(out_[u], v);
    insert_sorted(in_[v], u);
    ++edge_count_;
}

void DirectedGraph::remove_edge(NodeId u, NodeId v) {
    if (!has_edge(u, v))
        return;
    present_[n_ * u + v] = 0;
    erase_sorted(out_[u], v);
    erase_sorted(in_[v], u);
    --edge_count_;
}

std::vector<std::pair<NodeId, NodeId>> DirectedGraph::edges() const {
    std::vector<std::pair<NodeId, NodeId>> result;
    result.reserve(edge_count_);
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : out_[u])
            result.emplace_back(u, v);
    return result;
}

bool DirectedGraph::is_symmetric() const {
    for (NodeId u = 0; u < n_; ++u)
        for (NodeId v : out_[u])
            if (!has_edge(v, u))
                return false;
    return true;
}

DirectedGraph build_gmax(const std::vector<Node>& nodes, const LinkTable& links) {
    const std::size_t n = nodes.size();
    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            const bool forward = links.threshold(u, v) <= nodes[u].max_power;
            const bool backward = links.threshold(v, u) <= nodes[v].max_power;
            if (forward && backward) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return g;
}

double compute_ph(const std::vector<Node>& nodes, const LinkTable& links) {
    const std::size_t n = links.size();
    if (nodes.size() != n)
        throw ConfigError("compute_ph: node count does not match link table");
    if (n < 2)
        return 0.0;

    // Prim over the complete graph; the bottleneck (largest) MST edge
    // weight is the connectivity power.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> best(n, kInf);
    std::vector<char> used(n, 0);
    best[0] = 0.0;
    double bottleneck = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        NodeId x = 0;
        double x_best = kInf;
        for (NodeId i = 0; i < n; ++i)
            if (!used[i] && best[i] < x_best) {
                x = i;
                x_best = best[i];
            }
        if (x_best == kInf)
            throw UnconnectableNetwork("compute_ph: no finite power connects the network");
        used[x] = 1;
        bottleneck = std::max(bottleneck, x_best);
        for (NodeId v = 0; v < n; ++v) {
            if (used[v] || v == x)
                continue;
            const double w = std::max(links.threshold(x, v), links.threshold(v, x));
            if (w < best[v])
                best[v] = w;
        }
    }
    return bottleneck;
}

DirectedGraph build_initial_graph(const LinkTable& links, double p) {
    const std::size_t n = links.size();
    DirectedGraph g(n);
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            if (std::max(links.threshold(u, v), links.threshold(v, u)) <= p) {
                g.add_edge(u, v);
                g.add_edge(v, u);
            }
        }
    }
    return g;
}

TupleLists compile_tuple_lists(NodeId u, const DirectedGraph& gmax, const LinkTable& links) {
    TupleLists lists;
    lists.out_list.reserve(gmax.out_degree(u));
    for (NodeId v : gmax.out_neighbors(u))
        lists.out_list.push_back(links.tuple(u, v));
    lists.in_list.reserve(gmax.in_neighbors(u).size());
    for (NodeId v : gmax.in_neighbors(u))
        lists.in_list.push_back(links.tuple(v, u));
    return lists;
}

} // namespace stctopo
