#ifndef EPISIS_SIMULATE_HPP
#define EPISIS_SIMULATE_HPP

#include <cstdint>
#include <vector>

#include "episis/graph.hpp"
#include "episis/schedule.hpp"
#include "episis/timeseries.hpp"

namespace episis {

/// Stochastic SIS run setup. Either initial_fraction (seeds drawn per
/// replicate) or an explicit seed_nodes set (shared by all replicates).
struct SimConfig {
    const Graph* graph = nullptr;
    NodeSchedules schedules;
    double initial_fraction = 0.2;
    std::vector<int> seed_nodes; // non-empty overrides initial_fraction
    int replicates = 50;
    int steps = 0;
    std::uint64_t rng_seed = 0;
    int freq_stride = 0; // record per-node frequencies every this many steps (0 = never)
};

struct SimResult {
    std::vector<double> mean_infected;  // one entry per step, t = 0..steps
    std::vector<double> freq_t;         // snapshot times (freq_stride > 0 only)
    std::vector<std::vector<double>> frequencies; // per snapshot, length n
    int replicates = 0;

    TimeSeries to_timeseries(const Graph& g, int freq_stride) const;
};

/// Synchronous per-step Monte Carlo: each step evaluates all transitions
/// from the time-t state, then applies them. Replicates use independent
/// counter RNG streams keyed by (rng_seed, replicate) and may run
/// concurrently; results are bit-identical for a given config.
SimResult run(const SimConfig& cfg);

struct DiscrepancyReport {
    double max_abs = 0.0;
    double mean_abs = 0.0;
    double max_norm = 0.0;  // max_abs / n
    double mean_norm = 0.0; // mean_abs / n
    int n = 0;
    // both aggregate curves sampled at integer t = 0..steps
    std::vector<double> sim_curve;
    std::vector<double> model_curve;
};

/// Runs the simulator and the master-equation model on the same setup and
/// compares the aggregate infected-count curves at integer times. dt must
/// divide the unit step.
DiscrepancyReport compare_with_model(const SimConfig& cfg, double dt);

} // namespace episis

#endif
