#ifndef EPISIS_DYNAMICS_HPP
#define EPISIS_DYNAMICS_HPP

#include <span>
#include <string>
#include <vector>

#include "episis/graph.hpp"
#include "episis/schedule.hpp"
#include "episis/timeseries.hpp"

namespace episis {

/// Per-node infection probabilities at time t. s_v = 1 - i_v is implied.
struct InfectionState {
    std::vector<double> i;
    double t = 0.0;

    InfectionState() = default;
    InfectionState(int n, double value, double t0 = 0.0) : i(n, value), t(t0) { validate(); }
    explicit InfectionState(std::vector<double> probs, double t0 = 0.0) : i(std::move(probs)), t(t0)
    {
        validate();
    }

    void validate() const;
    int n() const { return static_cast<int>(i.size()); }
};

/// Piecewise-constant sequence of graphs; the entry with the largest
/// switch time <= t is active. First switch time must be 0.
class TopologySchedule {
public:
    explicit TopologySchedule(const Graph& g) : switch_times_{0.0}, graphs_{&g} {}
    TopologySchedule(std::vector<double> switch_times, std::vector<const Graph*> graphs);

    const Graph& at(double t) const;
    int n() const { return graphs_.front()->n(); }
    const Graph& first() const { return *graphs_.front(); }

private:
    std::vector<double> switch_times_;
    std::vector<const Graph*> graphs_;
};

/// Probability that susceptible v becomes infected right now, given the
/// infection probabilities of its in-neighbours.
double infection_pressure(const Graph& g, const InfectionState& state, double gamma, int v);

struct StepStats {
    std::int64_t clamps = 0;
};

/// One explicit Euler step of the master equation. The state is advanced
/// in place and clamped to [0,1] with events counted. `w` (optional,
/// length n) is an additive control input on di/dt.
StepStats master_step(const Graph& g, InfectionState& state, const NodeSchedules& sched, double dt,
                      std::span<const double> w = {});

enum class Method { Euler, Rk4 };

struct IntegrateOptions {
    Method method = Method::Euler;
    int node_stride = 0;          // record full state every this many steps (0 = never)
    double stop_below = -1.0;     // stop once sum_i drops below this (negative = never)
};

/// Repeated master steps honoring topology switches; records t and sum_i
/// every step. Per-node snapshots are taken every node_stride steps.
TimeSeries integrate(const TopologySchedule& topo, const InfectionState& init, const NodeSchedules& sched,
                     double dt, int steps, const IntegrateOptions& opts = {});
TimeSeries integrate(const Graph& g, const InfectionState& init, const NodeSchedules& sched, double dt,
                     int steps, const IntegrateOptions& opts = {});

/// One explicit Euler step of the linear comparison system
/// dx/dt = (gamma(t) A - B(t)) x. No clamping.
void linear_step(const Graph& g, std::vector<double>& x, double t, const NodeSchedules& sched, double dt);

struct MLEEstimate {
    double mu = 0.0;
    double horizon = 0.0;
    double renorm_interval = 0.0;
    /// (t, accumulated log-norm) at each renormalization.
    std::vector<std::pair<double, double>> log_norm_trace;
};

/// Top Lyapunov exponent of the comparison system, estimated by growing
/// the uniform unit-1-norm vector and renormalizing every
/// renorm_interval; mu = (accumulated log norm) / horizon.
MLEEstimate estimate_mle(const TopologySchedule& topo, const NodeSchedules& sched, double horizon,
                         double dt, double renorm_interval);
MLEEstimate estimate_mle(const Graph& g, const NodeSchedules& sched, double horizon, double dt,
                         double renorm_interval);

enum class Verdict { DiesOut, Persists, Inconclusive };

const char* to_string(Verdict v);

struct ThresholdReport {
    double lambda1 = 0.0;
    double beta_bar = 0.0;
    double gamma_bar = 0.0;
    double ratio = 0.0;  // beta_bar / gamma_bar
    double margin = 0.0; // ratio - lambda1
    Verdict verdict = Verdict::Inconclusive;
};

/// Succinct die-out test: compares lambda1 against beta_bar/gamma_bar
/// using the schedules' analytic long-run means. tie_tol is relative to
/// lambda1.
ThresholdReport threshold_check(double lambda1, const ParamSchedule& beta_sched,
                                const ParamSchedule& gamma_sched, double tie_tol = 1e-9);

/// Same, from NodeSchedules; rejects per-node beta (the premise needs one
/// shared cure schedule — use estimate_mle for the general case).
ThresholdReport threshold_check(double lambda1, const NodeSchedules& sched, double tie_tol = 1e-9);

/// sum_i below this declares extinction in summaries (trajectories of the
/// continuous system never reach exact zero).
inline double extinction_threshold(int n)
{
    return 1e-6 * n;
}

} // namespace episis

#endif
