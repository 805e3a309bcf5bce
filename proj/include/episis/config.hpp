#ifndef EPISIS_CONFIG_HPP
#define EPISIS_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "episis/control.hpp"
#include "episis/graph.hpp"
#include "episis/schedule.hpp"

namespace episis {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GraphSpec {
    enum class Source { EdgeList, Complete, Star, Cycle, Path, Gnp };
    Source source = Source::Complete;
    std::string path;    // EdgeList
    bool directed = false;
    int n = 0;           // generators: total node count (star = hub + n-1 leaves)
    double p = 0.0;      // Gnp
    std::uint64_t gen_seed = 1;

    Graph build() const;
};

struct ExperimentConfig {
    std::string mode;
    GraphSpec graph;

    ParamSchedule beta;  // modes with a plant-side cure schedule
    ParamSchedule gamma;
    bool has_beta = false;
    bool has_gamma = false;

    // [run]
    double dt = 1.0;
    int steps = -1;
    int replicates = 50;
    double initial_fraction = 0.2;
    std::vector<int> seed_nodes;
    std::uint64_t seed = 1;
    double horizon = -1.0;
    double renorm_interval = 10.0;
    int stride = 0;
    double tie_tol = 1e-9;

    // [control]
    bool has_control = false;
    double rho = -1.0;
    double eta = 0.0;
    double i_star = -1.0;
    double beta0 = 0.0;
    WMode w_mode = WMode::Zero;

    std::string out_path;
};

/// Parses the flat key = value section grammar (see README) and applies
/// the defaults dt=1, period=8, replicates=50, initial_fraction=0.2.
/// Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

struct ExperimentResult {
    std::string summary;      // the one-line stdout summary
    int exit_status = 0;
};

/// Dispatches the config to the matching module, writes any CSV to
/// cfg.out_path (and a bound report to <out>.report.txt for control
/// modes), and returns the one-line summary.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

} // namespace episis

#endif
