#ifndef EPISIS_CONTROL_HPP
#define EPISIS_CONTROL_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "episis/dynamics.hpp"
#include "episis/graph.hpp"
#include "episis/schedule.hpp"
#include "episis/timeseries.hpp"

namespace episis {

/// Die-out defense: every node raises its own cure rate in proportion to
/// its observed infection probability, starting from zero.
struct DieOutController {
    double rho = 0.0;
    std::vector<double> beta;
    std::int64_t clamp_events = 0;

    DieOutController(int n, double rho);
};

/// beta_v += dt * rho * i_v, clamped above at 1 (beta is a probability).
void dieout_step(DieOutController& ctrl, std::span<const double> i, double dt);

enum class WMode { Zero, Proportional };

/// Reference cure rates that hold the target profile i_star stationary:
/// beta*_v = [1 - prod_{u in in(v)} (1 - gamma * i*_u)] (1 - i*_v) / i*_v.
std::vector<double> beta_star(const Graph& g, double gamma, const std::vector<double>& i_star);

/// Containment defense: steers i toward the target profile i_star.
struct ContainController {
    double rho = 0.0;
    double eta = 0.0;
    std::vector<double> i_star;
    std::vector<double> beta;
    std::vector<double> beta_star;
    WMode w_mode = WMode::Zero;
    std::int64_t clamp_events = 0;
};

/// Builds the controller and its beta* reference from (g, gamma, i_star).
/// Proportional mode validates the gain condition
/// eta + min_v beta*_v > 1 + gamma * lambda1 (lambda1 computed from g when
/// the caller passes a negative value).
ContainController make_contain_controller(const Graph& g, double gamma, std::vector<double> i_star,
                                          double rho, double eta, WMode w_mode,
                                          std::vector<double> beta0 = {}, double lambda1 = -1.0);

/// beta_v += dt * rho * (i_v - i*_v) * i_v, clamped to [0,1]. When w_out
/// is non-empty it receives eta * (i*_v - i_v) (Proportional) or zeros.
/// Both are computed from the i passed in.
void contain_step(ContainController& ctrl, std::span<const double> i, double dt,
                  std::span<double> w_out = {});

struct ControlledRunOptions {
    int node_stride = 0;
    /// Keep every k-th step in the series (long runs stay bounded in
    /// memory); the first and last step are always kept. The observed
    /// integral still accumulates every step.
    int record_stride = 1;
    /// Integral truncation level for observed_integral; negative means
    /// the extinction threshold 1e-6 * n.
    double integral_threshold = -1.0;
    /// Stop stepping once the integrand falls below the threshold.
    bool stop_run_at_threshold = false;
};

struct ControlledRun {
    TimeSeries series;
    /// Trapezoidal integral of the integrand (sum_i for die-out,
    /// sum |i - i*| for containment) up to truncation_time.
    double observed_integral = 0.0;
    double truncation_time = 0.0;
    bool reached_threshold = false;
    std::vector<double> final_i;
    std::vector<double> final_beta;
};

/// Closed loop: the gamma schedule drives the plant; the controller sees
/// only i(t). Plant and controller advance together with one Euler step
/// of the coupled system per call. The clock starts at init.t, so a run
/// can be resumed from a previous run's final state.
ControlledRun run_controlled(const Graph& g, const InfectionState& init,
                             const ParamSchedule& gamma_sched, DieOutController& ctrl, double dt,
                             int steps, const ControlledRunOptions& opts = {});
ControlledRun run_controlled(const Graph& g, const InfectionState& init,
                             const ParamSchedule& gamma_sched, ContainController& ctrl, double dt,
                             int steps, const ControlledRunOptions& opts = {});

struct BoundReport {
    std::string name;
    double bound_value = 0.0;
    std::vector<std::pair<std::string, double>> inputs;
    // filled by the caller from a ControlledRun
    double observed_integral = -1.0;
    double truncation_time = -1.0;
    bool has_observation = false;

    void attach_observation(const ControlledRun& run);
    bool conforms() const { return has_observation && observed_integral <= bound_value; }
};

/// Proposition-style guarantee for the die-out loop:
/// integral of sum_i dt <= (n-1)^2 g_m / rho
///                         + (n-1)/rho * sqrt(sum_i0 + (n-1)^3 g_m^2 / (2 rho)).
BoundReport prop1_bound(int n, double rho, double gamma_m, double sum_i0);

/// Tracking guarantee for the containment loop (identity weights):
/// integral of sum |i - i*| dt <=
///   [ 1/2 sum (i0 - i*)^2 + 1/(2 rho) sum (beta0 - beta*)^2 ] / (eta - 1 - gamma*lambda1).
BoundReport prop2_bound(double rho, double eta, double gamma, double lambda1,
                        const std::vector<double>& i0, const std::vector<double>& i_star,
                        const std::vector<double>& beta0, const std::vector<double>& beta_star);

/// Key-value text block.
void write_report(std::ostream& out, const BoundReport& rep);
std::string report_text(const BoundReport& rep);

} // namespace episis

#endif
