#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "stctopo/analysis.hpp"
#include "stctopo/pathloss.hpp"

namespace stctopo {

/// Per-network averages, normalized to the initial graph H. Fields
/// that do not apply (the MinReach reference has no topology) are NaN.
struct MetricsReport {
    double avg_power_ratio = 0.0;
    double avg_energy_ratio_hops = 0.0;
    double avg_energy_ratio_energy = 0.0;
    double avg_interference_ratio_hops = 0.0;
    double avg_interference_ratio_energy = 0.0;
    double avg_node_degree = 0.0;

    std::array<double, 6> as_array() const {
        return {avg_power_ratio,          avg_energy_ratio_hops,
                avg_energy_ratio_energy,  avg_interference_ratio_hops,
                avg_interference_ratio_energy, avg_node_degree};
    }
    static MetricsReport from_array(const std::array<double, 6>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
};

/// All ratios of T against the initial graph's cover H: per-node power,
/// per-ordered-pair path energy and interference along minimum-hop and
/// minimum-energy paths, and the mean undirected degree of T.
MetricsReport network_metrics(const CoverGraph& T, const CoverGraph& H);

/// Mean over nodes of P_T(u)/P_H(u) only; cheap, no path computations.
double average_power_ratio(const CoverGraph& T, const CoverGraph& H);

/// The MinReach reference: mean over ordered pairs of the per-link
/// minimum-energy path cost on G_max over the H minimum-energy path
/// cost. Only avg_energy_ratio_energy is populated.
MetricsReport minreach_report(const DirectedGraph& gmax, const LinkTable& links,
                              const CoverGraph& H);

struct ExperimentSpec {
    int id = 0;
    std::string sweep_param;
    std::vector<double> sweep_values;
    int trials = 100;
    GenConfig base;
    std::vector<std::string> algorithms;
};

ExperimentSpec experiment1();
ExperimentSpec experiment2();
ExperimentSpec experiment3();
ExperimentSpec experiment4();
ExperimentSpec experiment_by_id(int id); // throws ConfigError on bad id

struct ResultRow {
    int experiment = 0;
    std::string sweep_param;
    double sweep_value = 0.0;
    std::string algorithm;
    int trials = 0;
    MetricsReport mean;
    MetricsReport se;
};

/// Seeded Monte-Carlo sweep: one network per (sweep value, trial index),
/// trial seeds derived from the master seed so the table is independent
/// of execution order and worker count.
std::vector<ResultRow> run_trials(const ExperimentSpec& spec, int jobs = 1);

/// Fixed-column CSV, floats printed with 6 significant digits.
std::string results_csv(const std::vector<ResultRow>& rows);

/// Runs fn(0..count-1) on up to `jobs` workers; rethrows the
/// lowest-index failure after all workers finish.
void parallel_for_index(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

} // namespace stctopo
