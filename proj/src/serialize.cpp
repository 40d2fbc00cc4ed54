#include "stctopo/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stctopo/errors.hpp"

namespace stctopo {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open for reading: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw IoError("read failure: " + path);
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failure: " + path);
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(what + ": " + e.what());
    }
}

} // namespace

json network_to_json(const Network& net) {
    const std::size_t n = net.nodes.size();
    json nodes = json::array();
    for (const Node& node : net.nodes)
        nodes.push_back({{"id", node.id}, {"x", node.x}, {"y", node.y},
                         {"max_power", node.max_power}});

    json links = json::array();
    for (NodeId u = 0; u < n; ++u) {
        for (NodeId v = u + 1; v < n; ++v) {
            json link = {{"u", u},
                         {"v", v},
                         {"threshold_uv", net.links.threshold(u, v)},
                         {"threshold_vu", net.links.threshold(v, u)},
                         {"gamma", net.links.gamma(u, v)}};
            if (net.links.gamma(v, u) != net.links.gamma(u, v))
                link["gamma_vu"] = net.links.gamma(v, u);
            links.push_back(std::move(link));
        }
    }

    return json{{"nodes", std::move(nodes)},
                {"links", std::move(links)},
                {"meta",
                 {{"seed", net.meta.seed},
                  {"scale_m", net.meta.scale_m},
                  {"d0_m", net.meta.d0_m},
                  {"theta", net.meta.theta}}}};
}

Network network_from_json(const json& j) {
    try {
        const json& jnodes = j.at("nodes");
        const std::size_t n = jnodes.size();
        if (n < 2)
            throw ConfigError("network file: fewer than two nodes");

        std::vector<Node> nodes(n);
        std::vector<char> seen_node(n, 0);
        for (const json& jn : jnodes) {
            const auto id = jn.at("id").get<std::uint64_t>();
            if (id >= n || seen_node[id])
                throw ConfigError("network file: node ids must be unique and dense 0..n-1");
            seen_node[id] = 1;
            Node& node = nodes[id];
            node.id = static_cast<NodeId>(id);
            node.x = jn.at("x").get<double>();
            node.y = jn.at("y").get<double>();
            node.max_power = jn.at("max_power").get<double>();
            if (node.max_power <= 0.0)
                throw ConfigError("network file: max_power must be positive");
        }

        NetworkMeta meta;
        const json& jmeta = j.at("meta");
        meta.seed = jmeta.at("seed").get<std::uint64_t>();
        meta.scale_m = jmeta.at("scale_m").get<double>();
        meta.d0_m = jmeta.at("d0_m").get<double>();
        meta.theta = jmeta.at("theta").get<double>();

        PropagationConfig prop;
        prop.d0 = meta.d0_m;
        prop.theta = meta.theta;

        LinkTable links(n);
        std::vector<char> seen_pair(n * n, 0);
        for (const json& jl : j.at("links")) {
            const auto u = jl.at("u").get<std::uint64_t>();
            const auto v = jl.at("v").get<std::uint64_t>();
            if (u >= n || v >= n || u == v)
                throw ConfigError("network file: bad link endpoints");
            if (seen_pair[n * u + v])
                throw ConfigError("network file: duplicate link entry");
            seen_pair[n * u + v] = 1;
            seen_pair[n * v + u] = 1;

            const double thr_uv = jl.at("threshold_uv").get<double>();
            const double thr_vu = jl.at("threshold_vu").get<double>();
            const double gamma_uv = jl.at("gamma").get<double>();
            const double gamma_vu =
                jl.contains("gamma_vu") ? jl.at("gamma_vu").get<double>() : gamma_uv;

            const double d = std::hypot(nodes[u].x - nodes[v].x, nodes[u].y - nodes[v].y);
            const double want_uv = threshold_from_distance(d, gamma_uv, prop);
            const double want_vu = threshold_from_distance(d, gamma_vu, prop);
            if (std::fabs(thr_uv - want_uv) > 1e-9 * want_uv ||
                std::fabs(thr_vu - want_vu) > 1e-9 * want_vu)
                throw ConfigError("network file: threshold does not match recomputed "
                                  "distance for pair (" +
                                  std::to_string(u) + "," + std::to_string(v) + ")");

            links.set(static_cast<NodeId>(u), static_cast<NodeId>(v), thr_uv, gamma_uv, d);
            links.set(static_cast<NodeId>(v), static_cast<NodeId>(u), thr_vu, gamma_vu, d);
        }
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = u + 1; v < n; ++v)
                if (!seen_pair[n * u + v])
                    throw ConfigError("network file: missing link for pair (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")");

        return Network{std::move(nodes), std::move(links), meta};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("network file: ") + e.what());
    }
}

void save_network(const Network& net, const std::string& path) {
    write_file(path, network_to_json(net).dump() + "\n");
}

Network load_network(const std::string& path) {
    return network_from_json(parse_json(read_file(path), "network file " + path));
}

GenConfig gen_config_from_json(const json& j) {
    try {
        GenConfig cfg;
        cfg.n_nodes = j.at("n_nodes").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.symmetric_costs = j.at("symmetric_costs").get<bool>();
        cfg.propagation.scale = j.at("scale_m").get<double>();
        cfg.propagation.d0 = j.at("d0_m").get<double>();
        cfg.propagation.theta = j.at("theta").get<double>();

        const json& gamma = j.at("gamma");
        const auto mode = gamma.at("mode").get<std::string>();
        if (mode == "uniform")
            cfg.propagation.mode = ExponentMode::Uniform;
        else if (mode == "gaussian")
            cfg.propagation.mode = ExponentMode::Gaussian;
        else
            throw ConfigError("gamma.mode must be \"uniform\" or \"gaussian\"");
        cfg.propagation.gamma_mean = gamma.at("mean").get<double>();
        cfg.propagation.gamma_sigma = gamma.value("sigma", 0.0);
        cfg.propagation.gamma_min = gamma.value("min", cfg.propagation.gamma_mean);
        cfg.propagation.gamma_max = gamma.value("max", cfg.propagation.gamma_mean);

        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("gen config: ") + e.what());
    }
}

GenConfig load_gen_config(const std::string& path) {
    return gen_config_from_json(parse_json(read_file(path), "gen config " + path));
}

std::string topology_csv(const Topology& topo) {
    std::string csv = "u,v\n";
    for (const auto& [u, v] : topo.graph.edges()) {
        csv += std::to_string(u);
        csv += ',';
        csv += std::to_string(v);
        csv += '\n';
    }
    return csv;
}

void save_topology(const Topology& topo, std::uint64_t seed, const std::string& csv_path) {
    write_file(csv_path, topology_csv(topo));
    json params = json::object();
    if (topo.k)
        params["k"] = *topo.k;
    if (topo.alpha)
        params["alpha"] = *topo.alpha;
    const json sidecar = {{"algorithm", topo.algorithm}, {"params", params}, {"seed", seed}};
    write_file(csv_path + ".json", sidecar.dump() + "\n");
}

DirectedGraph load_topology_csv(const std::string& path, std::size_t n) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line) || line != "u,v")
        throw ConfigError("topology file " + path + ": expected header \"u,v\"");
    DirectedGraph g(n);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError("topology file " + path + ": bad line: " + line);
        const unsigned long u = std::stoul(line.substr(0, comma));
        const unsigned long v = std::stoul(line.substr(comma + 1));
        if (u >= n || v >= n || u == v)
            throw ConfigError("topology file " + path + ": bad edge: " + line);
        g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return g;
}

} // namespace stctopo
