#include <cstdint>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "stctopo/algorithms.hpp"
#include "stctopo/analysis.hpp"
#include "stctopo/errors.hpp"
#include "stctopo/metrics.hpp"
#include "stctopo/pathloss.hpp"
#include "stctopo/rng.hpp"
#include "stctopo/serialize.hpp"

namespace {

using namespace stctopo;

int cmd_gen(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_path) {
    GenConfig cfg = load_gen_config(config_path);
    if (seed)
        cfg.seed = *seed;
    const Network net = build_network(cfg);
    save_network(net, out_path);
    std::cout << "wrote " << out_path << " (" << net.nodes.size() << " nodes, seed " << cfg.seed
              << ")\n";
    return 0;
}

int cmd_run(const std::string& network_path, const std::string& algo, std::optional<int> k,
            std::optional<double> alpha, const std::string& out_path) {
    const Network net = load_network(network_path);
    const DirectedGraph gmax = build_gmax(net.nodes, net.links);
    const Topology topo = run_algorithm(algo, net, gmax, k, alpha);
    const CoverGraph cover = cover_graph(topo, gmax, net.links);

    save_topology(topo, net.meta.seed, out_path);
    const std::size_t kept = topo.graph.num_edges();
    const std::size_t removed = gmax.num_edges() - kept;
    std::cout << "algorithm=" << topo.algorithm;
    if (topo.k)
        std::cout << " k=" << *topo.k;
    if (topo.alpha)
        std::cout << " alpha=" << *topo.alpha;
    std::cout << " kept=" << kept << " removed=" << removed
              << " cover_connected=" << (is_connected(cover.graph) ? "yes" : "no") << "\n";
    std::cout << "wrote " << out_path << " and " << out_path << ".json\n";
    return 0;
}

int cmd_eval(const std::string& network_path, const std::string& topology_path,
             const std::string& out_path) {
    const Network net = load_network(network_path);
    const DirectedGraph gmax = build_gmax(net.nodes, net.links);
    const DirectedGraph edges = load_topology_csv(topology_path, net.nodes.size());
    const Topology topo{edges, "file", std::nullopt, std::nullopt};

    const double ph = compute_ph(net.nodes, net.links);
    const CoverGraph hcover = initial_cover(build_initial_graph(net.links, ph), ph);
    const CoverGraph tcover = cover_graph(topo, gmax, net.links);
    const MetricsReport report = network_metrics(tcover, hcover);

    const auto values = report.as_array();
    static const char* names[6] = {"avg_power_ratio",
                                   "avg_energy_ratio_hops",
                                   "avg_energy_ratio_energy",
                                   "avg_interference_ratio_hops",
                                   "avg_interference_ratio_energy",
                                   "avg_node_degree"};
    nlohmann::json out = nlohmann::json::object();
    for (int i = 0; i < 6; ++i) {
        std::printf("%s %.6g\n", names[i], values[i]);
        out[names[i]] = values[i];
    }
    if (!out_path.empty())
        write_file(out_path, out.dump() + "\n");
    return 0;
}

int cmd_exp(int id, std::optional<int> trials, std::optional<std::uint64_t> seed, int jobs,
            const std::string& out_path) {
    ExperimentSpec spec = experiment_by_id(id);
    if (trials)
        spec.trials = *trials;
    if (seed)
        spec.base.seed = *seed;
    const std::vector<ResultRow> rows = run_trials(spec, jobs);
    write_file(out_path, results_csv(rows));
    std::cout << "wrote " << out_path << " (" << rows.size() << " rows, " << spec.trials
              << " trials per point)\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify: executable checks of the proved relationships. The centralized
// k-hop rule serves as the reference implementation for the distributed
// procedure; the two share no code path.

bool subset_of(const DirectedGraph& a, const DirectedGraph& b) {
    for (const auto& [u, v] : a.edges())
        if (!b.has_edge(u, v))
            return false;
    return true;
}

/// removed(x) subset of removed(y) relative to gmax, i.e. E_y subset of E_x.
bool removed_subset(const Topology& x, const Topology& y) {
    return subset_of(y.graph, x.graph);
}

struct PropertyCounter {
    std::string name;
    int passed = 0;
    int total = 0;
    std::vector<std::uint64_t> bad_seeds;

    void record(bool ok, std::uint64_t seed) {
        ++total;
        if (ok)
            ++passed;
        else
            bad_seeds.push_back(seed);
    }
};

int cmd_verify(int trials, std::uint64_t master_seed, int jobs) {
    GenConfig gauss;
    gauss.n_nodes = 60;
    gauss.symmetric_costs = true;
    gauss.propagation =
        PropagationConfig{ExponentMode::Gaussian, 3.1, 0.16, 2.7, 3.5, 1.0, 1.0, 1000.0};

    GenConfig uniform = gauss;
    uniform.propagation =
        PropagationConfig{ExponentMode::Uniform, 3.1, 0.0, 3.1, 3.1, 1.0, 1.0, 1000.0};

    GenConfig small = gauss;
    small.n_nodes = 30;

    PropertyCounter connectivity{"connectivity-preservation"};
    PropertyCounter subsets{"subset-chains"};
    PropertyCounter oracle{"oracle-equivalence"};
    PropertyCounter cbtc{"cbtc-subset"};

    struct TrialOutcome {
        bool connectivity_ok = false;
        bool subsets_ok = false;
        bool oracle_ok = false;
        bool cbtc_ok = false;
        std::uint64_t seed = 0;
    };
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));

    parallel_for_index(outcomes.size(), jobs, [&](std::size_t i) {
        TrialOutcome& outcome = outcomes[i];
        outcome.seed = derive_stream(master_seed, i);

        GenConfig cfg = gauss;
        cfg.seed = outcome.seed;
        const Network net = build_network(cfg);
        const DirectedGraph gmax = build_gmax(net.nodes, net.links);

        const Topology stc = run_stc(gmax, net.links);
        const Topology drng = run_drng(gmax, net.links);
        const Topology dlss = run_dlss(gmax, net.links);
        const Topology smecn = run_smecn(gmax, net.links);
        const Topology mst = run_mst(gmax, net.links);
        std::vector<Topology> khops;
        for (int k = 2; k <= 6; ++k)
            khops.push_back(run_khop(gmax, net.links, k));

        std::vector<const Topology*> all{&stc, &drng, &dlss, &smecn, &mst};
        for (const Topology& t : khops)
            all.push_back(&t);
        outcome.connectivity_ok = true;
        for (const Topology* t : all) {
            const CoverGraph cover = cover_graph(*t, gmax, net.links);
            if (!is_connected(cover.graph))
                outcome.connectivity_ok = false;
        }

        outcome.subsets_ok = removed_subset(smecn, stc) && removed_subset(drng, stc) &&
                             removed_subset(drng, dlss) && khops[0].graph == drng.graph &&
                             khops[1].graph == stc.graph;
        for (int k = 2; k <= 5; ++k)
            outcome.subsets_ok =
                outcome.subsets_ok && subset_of(khops[k - 1].graph, khops[k - 2].graph);

        GenConfig scfg = small;
        scfg.seed = outcome.seed;
        const Network snet = build_network(scfg);
        const DirectedGraph sgmax = build_gmax(snet.nodes, snet.links);
        outcome.oracle_ok =
            run_stc(sgmax, snet.links).graph == run_khop(sgmax, snet.links, 3).graph;

        GenConfig ucfg = uniform;
        ucfg.seed = outcome.seed;
        const Network unet = build_network(ucfg);
        const DirectedGraph ugmax = build_gmax(unet.nodes, unet.links);
        const Topology ustc = run_stc(ugmax, unet.links);
        const Topology opt =
            run_opt_cbtc(ugmax, unet.links, unet.nodes, 5.0 * std::numbers::pi / 6.0);
        outcome.cbtc_ok = removed_subset(opt, ustc);
    });

    for (const TrialOutcome& outcome : outcomes) {
        connectivity.record(outcome.connectivity_ok, outcome.seed);
        subsets.record(outcome.subsets_ok, outcome.seed);
        oracle.record(outcome.oracle_ok, outcome.seed);
        cbtc.record(outcome.cbtc_ok, outcome.seed);
    }

    bool all_ok = true;
    for (const PropertyCounter* p : {&connectivity, &subsets, &oracle, &cbtc}) {
        std::cout << p->name << ": " << p->passed << "/" << p->total;
        if (!p->bad_seeds.empty()) {
            all_ok = false;
            std::cout << " FAILED at seed";
            for (std::uint64_t s : p->bad_seeds)
                std::cout << ' ' << s;
        }
        std::cout << "\n";
    }
    std::cout << (all_ok ? "PASS" : "FAIL") << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Topology control simulation over a log-distance path-loss radio model"};
    app.require_subcommand(1);

    std::string config_path, network_path, topology_path, out_path, algo;
    std::optional<std::uint64_t> seed;
    std::optional<int> k, trials;
    std::optional<double> alpha;
    int exp_id = 0;
    int jobs = 1;

    CLI::App* gen = app.add_subcommand("gen", "Generate a random network");
    gen->add_option("--config", config_path, "Generation config (JSON)")->required();
    gen->add_option("--seed", seed, "Override the config seed");
    gen->add_option("--out", out_path, "Output network JSON")->required();

    CLI::App* run = app.add_subcommand("run", "Run one topology control algorithm");
    run->add_option("network", network_path, "Network JSON")->required();
    run->add_option("--algo", algo, "stc|khop|drng|dlss|smecn|cbtc|opt-cbtc|mst")->required();
    run->add_option("--k", k, "Hop bound for khop");
    run->add_option("--alpha", alpha, "Cone angle in radians for cbtc/opt-cbtc");
    run->add_option("--out", out_path, "Output topology CSV")->default_val("topology.csv");

    CLI::App* eval = app.add_subcommand("eval", "Evaluate metrics of a stored topology");
    eval->add_option("network", network_path, "Network JSON")->required();
    eval->add_option("topology", topology_path, "Topology CSV")->required();
    eval->add_option("--out", out_path, "Optional JSON report path");

    CLI::App* exp = app.add_subcommand("exp", "Reproduce one of the four experiments");
    exp->add_option("--id", exp_id, "Experiment id 1..4")->required();
    exp->add_option("--trials", trials, "Trials per sweep point (default 100)");
    exp->add_option("--seed", seed, "Master seed");
    exp->add_option("--jobs", jobs, "Worker threads")->default_val(1);
    exp->add_option("--out", out_path, "Output results CSV")->required();

    CLI::App* verify = app.add_subcommand("verify", "Run the property suites");
    verify->add_option("--trials", trials, "Networks per property (default 20)");
    verify->add_option("--seed", seed, "Master seed");
    verify->add_option("--jobs", jobs, "Worker threads")->default_val(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_gen(config_path, seed, out_path);
        if (run->parsed())
            return cmd_run(network_path, algo, k, alpha, out_path);
        if (eval->parsed())
            return cmd_eval(network_path, topology_path, out_path);
        if (exp->parsed())
            return cmd_exp(exp_id, trials, seed, jobs, out_path);
        if (verify->parsed())
            return cmd_verify(trials.value_or(20), seed.value_or(1), jobs);
    } catch (const AssumptionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
