#include "stctopo/pathloss.hpp"

#include <cmath>
#include <set>
#include <utility>

#include "stctopo/errors.hpp"

namespace stctopo {

void PropagationConfig::validate() const {
    if (d0 <= 0.0)
        throw ConfigError("d0_m must be positive");
    if (theta <= 0.0)
        throw ConfigError("theta must be positive");
    if (scale <= d0)
        throw ConfigError("scale_m must exceed d0_m");
    if (gamma_sigma < 0.0)
        throw ConfigError("gamma.sigma must be non-negative");
    if (!(gamma_min <= gamma_mean && gamma_mean <= gamma_max))
        throw ConfigError("gamma bounds must satisfy min <= mean <= max");
}

void GenConfig::validate() const {
    if (n_nodes < 2)
        throw ConfigError("n_nodes must be >= 2");
    propagation.validate();
}

namespace {

std::vector<Node> place_nodes_impl(SplitMix64& rng, std::size_t n, double scale) {
    constexpr int kRetryCap = 100;
    std::vector<Node> nodes;
    nodes.reserve(n);
    std::set<std::pair<double, double>> taken;
    for (std::size_t i = 0; i < n; ++i) {
        double x = 0.0, y = 0.0;
        bool placed = false;
        for (int attempt = 0; attempt < kRetryCap && !placed; ++attempt) {
            x = rng.uniform(0.0, scale);
            y = rng.uniform(0.0, scale);
            placed = taken.emplace(x, y).second;
        }
        if (!placed)
            throw DegenerateGeometry("place_nodes: coincident points beyond retry cap");
        nodes.push_back(Node{static_cast<NodeId>(i), x, y, 0.0});
    }
    return nodes;
}

} // namespace

std::vector<Node> place_nodes(std::size_t n, std::uint64_t seed, double scale) {
    SplitMix64 rng(seed);
    return place_nodes_impl(rng, n, scale);
}

double sample_exponent(SplitMix64& rng, const PropagationConfig& cfg) {
    if (cfg.mode == ExponentMode::Uniform)
        return cfg.gamma_mean;
    for (;;) {
        const double g = cfg.gamma_mean + cfg.gamma_sigma * rng.gaussian();
        if (g >= cfg.gamma_min && g <= cfg.gamma_max)
            return g;
    }
}

double threshold_from_distance(double d, double gamma, const PropagationConfig& cfg) {
    if (d <= cfg.d0)
        return cfg.theta;
    return cfg.theta * std::pow(d / cfg.d0, gamma);
}

Network build_network(const GenConfig& cfg) {
    cfg.validate();
    const std::size_t n = cfg.n_nodes;
    const PropagationConfig& prop = cfg.propagation;

    SplitMix64 rng(cfg.seed);
    std::vector<Node> nodes = place_nodes_impl(rng, n, prop.scale);

    // One exponent per unordered pair in symmetric mode, per ordered
    // pair otherwise; draw order is fixed so the table is a pure
    // function of the config.
    LinkTable links(n);
    std::vector<double> gammas(n * n, prop.gamma_mean);
    if (prop.mode == ExponentMode::Gaussian) {
        if (cfg.symmetric_costs) {
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = u + 1; v < n; ++v) {
                    const double g = sample_exponent(rng, prop);
                    gammas[n * u + v] = g;
                    gammas[n * v + u] = g;
                }
        } else {
            for (NodeId u = 0; u < n; ++u)
                for (NodeId v = 0; v < n; ++v) {
                    if (u == v)
                        continue;
                    gammas[n * u + v] = sample_exponent(rng, prop);
                }
        }
    }

    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = 0; v < n; ++v) {
            if (u == v)
                continue;
            const double d = std::hypot(nodes[u].x - nodes[v].x, nodes[u].y - nodes[v].y);
            const double g = gammas[n * u + v];
            links.set(u, v, threshold_from_distance(d, g, prop), g, d);
        }
    }

    const double ph = compute_ph(nodes, links);
    for (Node& node : nodes)
        node.max_power = ph;

    return Network{std::move(nodes), std::move(links),
                   NetworkMeta{cfg.seed, prop.scale, prop.d0, prop.theta}};
}

} // namespace stctopo
