#pragma once

#include <cstdint>
#include <vector>

#include "stctopo/net_model.hpp"
#include "stctopo/rng.hpp"

namespace stctopo {

enum class ExponentMode { Uniform, Gaussian };

/// Log-distance path loss parameters. theta is the receiver sensitivity
/// in linear power units; thresholds come out as theta * (d/d0)^gamma.
struct PropagationConfig {
    ExponentMode mode = ExponentMode::Gaussian;
    double gamma_mean = 3.1;
    double gamma_sigma = 0.16;
    double gamma_min = 2.7;
    double gamma_max = 3.5;
    double d0 = 1.0;       // reference distance [m]
    double theta = 1.0;    // receiver sensitivity, linear power
    double scale = 1000.0; // deployment square side [m]

    void validate() const; // throws ConfigError
};

struct GenConfig {
    std::size_t n_nodes = 200;
    std::uint64_t seed = 1;
    PropagationConfig propagation;
    bool symmetric_costs = true;

    void validate() const; // throws ConfigError
};

struct NetworkMeta {
    std::uint64_t seed = 0;
    double scale_m = 0.0;
    double d0_m = 0.0;
    double theta = 0.0;
};

struct Network {
    std::vector<Node> nodes;
    LinkTable links;
    NetworkMeta meta;
};

/// n points i.i.d. uniform over [0, scale]^2, pure function of
/// (n, seed, scale). max_power is left at 0; build_network fills it in.
std::vector<Node> place_nodes(std::size_t n, std::uint64_t seed, double scale);

/// Uniform mode returns gamma_mean; Gaussian mode draws from
/// N(gamma_mean, gamma_sigma) truncated to [gamma_min, gamma_max] by
/// rejection.
double sample_exponent(SplitMix64& rng, const PropagationConfig& cfg);

/// Minimum transmit power whose received power after log-distance loss
/// meets the sensitivity theta. Clamps to theta for d < d0, where the
/// model is undefined.
double threshold_from_distance(double d, double gamma, const PropagationConfig& cfg);

/// Full deterministic generation: placement, per-pair exponents,
/// thresholds, and every node's max power set to the network's P_H so
/// that G_max equals the initial graph H.
Network build_network(const GenConfig& cfg);

} // namespace stctopo
