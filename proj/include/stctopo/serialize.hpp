#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "stctopo/algorithms.hpp"
#include "stctopo/pathloss.hpp"

namespace stctopo {

nlohmann::json network_to_json(const Network& net);
Network network_from_json(const nlohmann::json& j);

/// Writes {nodes, links, meta}; loading recomputes distances from the
/// positions and validates the stored thresholds to 1e-9 relative
/// tolerance.
void save_network(const Network& net, const std::string& path);
Network load_network(const std::string& path);

GenConfig gen_config_from_json(const nlohmann::json& j);
GenConfig load_gen_config(const std::string& path);

/// Kept directed edges as "u,v" lines.
std::string topology_csv(const Topology& topo);

/// Writes the edge CSV plus a JSON sidecar {algorithm, params, seed}
/// at csv_path + ".json".
void save_topology(const Topology& topo, std::uint64_t seed, const std::string& csv_path);

DirectedGraph load_topology_csv(const std::string& path, std::size_t n);

std::string read_file(const std::string& path);            // throws IoError
void write_file(const std::string& path, const std::string& content);

} // namespace stctopo
