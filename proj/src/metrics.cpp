#include "stctopo/metrics.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <queue>
#include <thread>

#include "stctopo/errors.hpp"
#include "stctopo/rng.hpp"

namespace stctopo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(double numerator, double denominator) {
    if (denominator == 0.0)
        return numerator == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return numerator / denominator;
}

} // namespace

double average_power_ratio(const CoverGraph& T, const CoverGraph& H) {
    const std::size_t n = T.power.size();
    if (n != H.power.size())
        throw ConfigError("average_power_ratio: vertex sets differ");
    double sum = 0.0;
    for (std::size_t u = 0; u < n; ++u)
        sum += ratio(T.power[u], H.power[u]);
    return sum / static_cast<double>(n);
}

MetricsReport network_metrics(const CoverGraph& T, const CoverGraph& H) {
    const std::size_t n = T.graph.num_vertices();
    if (H.graph.num_vertices() != n)
        throw ConfigError("network_metrics: vertex sets differ");
    if (!is_connected(T.graph))
        throw DisconnectedCover("network_metrics: cover graph is disconnected");
    if (!is_connected(H.graph))
        throw DisconnectedCover("network_metrics: initial graph is disconnected");

    MetricsReport report;
    report.avg_power_ratio = average_power_ratio(T, H);
    report.avg_node_degree =
        static_cast<double>(T.graph.num_edges()) / static_cast<double>(n);

    double e_hops = 0.0, e_energy = 0.0, i_hops = 0.0, i_energy = 0.0;
    std::size_t pairs = 0;
    for (NodeId t = 0; t < n; ++t) {
        const RouteField ft(T, t);
        const RouteField fh(H, t);
        for (NodeId s = 0; s < n; ++s) {
            if (s == t)
                continue;
            const PathResult t_hop = ft.min_hop_from(s);
            const PathResult h_hop = fh.min_hop_from(s);
            const PathResult t_en = ft.min_energy_from(s);
            const PathResult h_en = fh.min_energy_from(s);
            e_hops += ratio(t_hop.energy, h_hop.energy);
            e_energy += ratio(t_en.energy, h_en.energy);
            i_hops += ratio(static_cast<double>(t_hop.interference),
                            static_cast<double>(h_hop.interference));
            i_energy += ratio(static_cast<double>(t_en.interference),
                              static_cast<double>(h_en.interference));
            ++pairs;
        }
    }
    const auto denom = static_cast<double>(pairs);
    report.avg_energy_ratio_hops = e_hops / denom;
    report.avg_energy_ratio_energy = e_energy / denom;
    report.avg_interference_ratio_hops = i_hops / denom;
    report.avg_interference_ratio_energy = i_energy / denom;
    return report;
}

MetricsReport minreach_report(const DirectedGraph& gmax, const LinkTable& links,
                              const CoverGraph& H) {
    const std::size_t n = gmax.num_vertices();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    std::size_t pairs = 0;
    std::vector<double> dist(n);
    for (NodeId t = 0; t < n; ++t) {
        const RouteField fh(H, t);
        // per-link Dijkstra toward t: v's outgoing cost is C(v, next)
        dist.assign(n, kInf);
        dist[t] = 0.0;
        using Item = std::pair<double, NodeId>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        heap.emplace(0.0, t);
        while (!heap.empty()) {
            const auto [d, x] = heap.top();
            heap.pop();
            if (d > dist[x])
                continue;
            for (NodeId v : gmax.out_neighbors(x)) {
                const double nd = links.cost(v, x) + d;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    heap.emplace(nd, v);
                }
            }
        }
        for (NodeId s = 0; s < n; ++s) {
            if (s == t)
                continue;
            sum += ratio(dist[s], fh.min_energy_cost(s));
            ++pairs;
        }
    }
    MetricsReport report{kNaN, kNaN, 0.0, kNaN, kNaN, kNaN};
    report.avg_energy_ratio_energy = sum / static_cast<double>(pairs);
    return report;
}

ExperimentSpec experiment1() {
    ExperimentSpec spec;
    spec.id = 1;
    spec.sweep_param = "gamma";
    spec.sweep_values = {1.5, 2.0, 2.5, 3.0, 3.5};
    spec.trials = 100;
    spec.base.n_nodes = 200;
    spec.base.seed = 1;
    spec.base.symmetric_costs = true;
    spec.base.propagation =
        PropagationConfig{ExponentMode::Uniform, 3.1, 0.0, 3.1, 3.1, 1.0, 1.0, 1000.0};
    spec.algorithms = {"stc", "smecn", "drng", "dlss", "opt-cbtc", "mst", "minreach"};
    return spec;
}

ExperimentSpec experiment2() {
    ExperimentSpec spec;
    spec.id = 2;
    spec.sweep_param = "sigma";
    spec.sweep_values = {0.0, 0.08, 0.16, 0.24, 0.32, 0.40};
    spec.trials = 100;
    spec.base.n_nodes = 200;
    spec.base.seed = 1;
    spec.base.symmetric_costs = true;
    spec.base.propagation =
        PropagationConfig{ExponentMode::Gaussian, 3.1, 0.16, 2.7, 3.5, 1.0, 1.0, 1000.0};
    spec.algorithms = {"stc", "smecn", "drng", "dlss", "mst", "minreach"};
    return spec;
}

ExperimentSpec experiment3() {
    ExperimentSpec spec = experiment2();
    spec.id = 3;
    spec.sweep_param = "n_nodes";
    spec.sweep_values = {100, 200, 300, 400, 500};
    return spec;
}

ExperimentSpec experiment4() {
    ExperimentSpec spec = experiment2();
    spec.id = 4;
    spec.sweep_param = "k";
    spec.sweep_values = {2, 3, 4, 5, 6};
    spec.algorithms = {"khop"};
    return spec;
}

ExperimentSpec experiment_by_id(int id) {
    switch (id) {
    case 1:
        return experiment1();
    case 2:
        return experiment2();
    case 3:
        return experiment3();
    case 4:
        return experiment4();
    default:
        throw ConfigError("experiment id must be 1..4");
    }
}

void parallel_for_index(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = count;
    std::exception_ptr error;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index) {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> threads;
    const auto worker_count = static_cast<std::size_t>(jobs);
    threads.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w)
        threads.emplace_back(worker);
    for (std::thread& t : threads)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

namespace {

GenConfig apply_sweep(const ExperimentSpec& spec, double value) {
    GenConfig cfg = spec.base;
    if (spec.sweep_param == "gamma") {
        cfg.propagation.mode = ExponentMode::Uniform;
        cfg.propagation.gamma_mean = value;
        cfg.propagation.gamma_min = value;
        cfg.propagation.gamma_max = value;
        cfg.propagation.gamma_sigma = 0.0;
    } else if (spec.sweep_param == "sigma") {
        cfg.propagation.gamma_sigma = value;
    } else if (spec.sweep_param == "n_nodes") {
        cfg.n_nodes = static_cast<std::size_t>(value);
    } else if (spec.sweep_param == "k") {
        // affects the khop parameter, not generation
    } else {
        throw ConfigError("unknown sweep parameter: " + spec.sweep_param);
    }
    return cfg;
}

std::string fmt6(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

} // namespace

std::vector<ResultRow> run_trials(const ExperimentSpec& spec, int jobs) {
    if (spec.trials < 1)
        throw ConfigError("run_trials: trials must be >= 1");
    if (spec.sweep_values.empty())
        throw ConfigError("run_trials: sweep values must be non-empty");
    if (spec.algorithms.empty())
        throw ConfigError("run_trials: algorithm list must be non-empty");

    const std::size_t sweeps = spec.sweep_values.size();
    const std::size_t algos = spec.algorithms.size();
    const auto trials = static_cast<std::size_t>(spec.trials);
    std::vector<MetricsReport> cells(sweeps * algos * trials);

    parallel_for_index(sweeps * trials, jobs, [&](std::size_t unit) {
        const std::size_t sweep = unit / trials;
        const std::size_t trial = unit % trials;
        const double value = spec.sweep_values[sweep];
        GenConfig cfg = apply_sweep(spec, value);
        cfg.seed = derive_stream(spec.base.seed, trial);
        try {
            const Network net = build_network(cfg);
            const DirectedGraph gmax = build_gmax(net.nodes, net.links);
            // generation pins every max power to P_H, so G_max is H
            const CoverGraph hcover = initial_cover(gmax, net.nodes[0].max_power);
            for (std::size_t a = 0; a < algos; ++a) {
                const std::string& algo = spec.algorithms[a];
                MetricsReport report;
                if (algo == "minreach") {
                    report = minreach_report(gmax, net.links, hcover);
                } else {
                    std::optional<int> k;
                    if (algo == "khop")
                        k = static_cast<int>(value);
                    const Topology topo = run_algorithm(algo, net, gmax, k);
                    const CoverGraph cover = cover_graph(topo, gmax, net.links);
                    report = network_metrics(cover, hcover);
                }
                cells[(sweep * algos + a) * trials + trial] = report;
            }
        } catch (const std::exception& e) {
            throw std::runtime_error("trial " + std::to_string(trial) + " (seed " +
                                     std::to_string(cfg.seed) + "): " + e.what());
        }
    });

    std::vector<ResultRow> rows;
    rows.reserve(sweeps * algos);
    for (std::size_t sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t a = 0; a < algos; ++a) {
            std::array<double, 6> mean{};
            for (std::size_t trial = 0; trial < trials; ++trial) {
                const auto values = cells[(sweep * algos + a) * trials + trial].as_array();
                for (std::size_t f = 0; f < 6; ++f)
                    mean[f] += values[f];
            }
            for (double& m : mean)
                m /= static_cast<double>(trials);
            std::array<double, 6> se{};
            if (trials > 1) {
                for (std::size_t trial = 0; trial < trials; ++trial) {
                    const auto values = cells[(sweep * algos + a) * trials + trial].as_array();
                    for (std::size_t f = 0; f < 6; ++f) {
                        const double d = values[f] - mean[f];
                        se[f] += d * d;
                    }
                }
                for (double& s : se)
                    s = std::sqrt(s / (static_cast<double>(trials) *
                                       static_cast<double>(trials - 1)));
            }
            ResultRow row;
            row.experiment = spec.id;
            row.sweep_param = spec.sweep_param;
            row.sweep_value = spec.sweep_values[sweep];
            row.algorithm = spec.algorithms[a];
            row.trials = spec.trials;
            row.mean = MetricsReport::from_array(mean);
            row.se = MetricsReport::from_array(se);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
    std::string csv =
        "experiment,sweep_param,sweep_value,algorithm,trials,"
        "avg_power_ratio,se_power_ratio,"
        "avg_energy_ratio_hops,se_energy_ratio_hops,"
        "avg_energy_ratio_energy,se_energy_ratio_energy,"
        "avg_interference_ratio_hops,se_interference_ratio_hops,"
        "avg_interference_ratio_energy,se_interference_ratio_energy,"
        "avg_node_degree,se_node_degree\n";
    for (const ResultRow& row : rows) {
        csv += std::to_string(row.experiment);
        csv += ',';
        csv += row.sweep_param;
        csv += ',';
        csv += fmt6(row.sweep_value);
        csv += ',';
        csv += row.algorithm;
        csv += ',';
        csv += std::to_string(row.trials);
        const auto mean = row.mean.as_array();
        const auto se = row.se.as_array();
        for (std::size_t f = 0; f < 6; ++f) {
            csv += ',';
            csv += fmt6(mean[f]);
            csv += ',';
            csv += fmt6(se[f]);
        }
        csv += '\n';
    }
    return csv;
}

} // namespace stctopo
