#include "episis/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "episis/kernels.hpp"

namespace episis {

void InfectionState::validate() const
{
    for (std::size_t v = 0; v < i.size(); ++v) {
        double p = i[v];
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw std::invalid_argument("infection probability out of [0,1] at node " +
                                        std::to_string(v) + ": " + std::to_string(p));
        }
    }
}

TopologySchedule::TopologySchedule(std::vector<double> switch_times, std::vector<const Graph*> graphs)
    : switch_times_(std::move(switch_times)), graphs_(std::move(graphs))
{
    if (switch_times_.empty() || switch_times_.size() != graphs_.size())
        throw std::invalid_argument("topology schedule needs matching, non-empty time and graph lists");
    if (switch_times_.front() != 0.0)
        throw std::invalid_argument("first topology switch time must be 0");
    for (std::size_t k = 1; k < switch_times_.size(); ++k) {
        if (!(switch_times_[k] > switch_times_[k - 1]))
            throw std::invalid_argument("topology switch times must be strictly increasing");
    }
    int n = graphs_.front()->n();
    for (const Graph* g : graphs_) {
        if (g == nullptr) throw std::invalid_argument("null graph in topology schedule");
        if (g->n() != n)
            throw std::invalid_argument("all graphs in a topology schedule must share the node count");
    }
}

const Graph& TopologySchedule::at(double t) const
{
    // Linear scan from the back; schedules hold a handful of graphs.
    for (std::size_t k = switch_times_.size(); k-- > 0;) {
        if (t >= switch_times_[k]) return *graphs_[k];
    }
    return *graphs_.front();
}

double infection_pressure(const Graph& g, const InfectionState& state, double gamma, int v)
{
    if (v < 0 || v >= g.n()) throw std::out_of_range("infection_pressure: node out of range");
    double keep = 1.0;
    for (int u : g.in_neighbors(v)) keep *= 1.0 - gamma * state.i[u];
    return 1.0 - keep;
}

namespace {

void check_finite(const std::vector<double>& x, double t)
{
    for (std::size_t v = 0; v < x.size(); ++v) {
        if (!std::isfinite(x[v])) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "non-finite state at node %zu, t=%.6g", v, t);
            throw std::runtime_error(buf);
        }
    }
}

/// Clamp every entry to [0,1]; returns how many entries moved.
std::int64_t clamp_unit(std::vector<double>& x)
{
    std::int64_t events = 0;
    for (double& p : x) {
        if (p < 0.0) {
            p = 0.0;
            ++events;
        } else if (p > 1.0) {
            p = 1.0;
            ++events;
        }
    }
    return events;
}

struct Workspace {
    std::vector<double> beta, deriv;
    // RK4 only
    std::vector<double> k1, k2, k3, k4, stage;

    explicit Workspace(int n) : beta(n), deriv(n) {}
    void reserve_rk4(int n)
    {
        k1.resize(n);
        k2.resize(n);
        k3.resize(n);
        k4.resize(n);
        stage.resize(n);
    }
};

void eval_deriv(const Graph& g, const std::vector<double>& i, double t, const NodeSchedules& sched,
                std::span<const double> w, Workspace& ws, std::vector<double>& out)
{
    sched.materialize_beta(t, ws.beta);
    double gamma = sched.gamma_at(t);
    const double* wp = w.empty() ? nullptr : w.data();
    kernels::master_deriv(g, i, ws.beta, gamma, wp, out);
}

StepStats step_once(const Graph& g, InfectionState& state, const NodeSchedules& sched, double dt,
                    std::span<const double> w, Method method, Workspace& ws)
{
    const int n = g.n();
    std::vector<double>& i = state.i;
    if (method == Method::Euler) {
        eval_deriv(g, i, state.t, sched, w, ws, ws.deriv);
        for (int v = 0; v < n; ++v) i[v] += dt * ws.deriv[v];
    } else {
        ws.reserve_rk4(n);
        eval_deriv(g, i, state.t, sched, w, ws, ws.k1);
        for (int v = 0; v < n; ++v) ws.stage[v] = i[v] + 0.5 * dt * ws.k1[v];
        eval_deriv(g, ws.stage, state.t + 0.5 * dt, sched, w, ws, ws.k2);
        for (int v = 0; v < n; ++v) ws.stage[v] = i[v] + 0.5 * dt * ws.k2[v];
        eval_deriv(g, ws.stage, state.t + 0.5 * dt, sched, w, ws, ws.k3);
        for (int v = 0; v < n; ++v) ws.stage[v] = i[v] + dt * ws.k3[v];
        eval_deriv(g, ws.stage, state.t + dt, sched, w, ws, ws.k4);
        for (int v = 0; v < n; ++v)
            i[v] += dt / 6.0 * (ws.k1[v] + 2.0 * ws.k2[v] + 2.0 * ws.k3[v] + ws.k4[v]);
    }
    state.t += dt;
    check_finite(i, state.t);
    StepStats stats;
    stats.clamps = clamp_unit(i);
    return stats;
}

} // namespace

StepStats master_step(const Graph& g, InfectionState& state, const NodeSchedules& sched, double dt,
                      std::span<const double> w)
{
    if (state.n() != g.n()) throw std::invalid_argument("master_step: state size != graph size");
    if (!w.empty() && static_cast<int>(w.size()) != g.n())
        throw std::invalid_argument("master_step: control input size != graph size");
    sched.validate(g.n());
    if (!(dt > 0.0)) throw std::invalid_argument("master_step: dt must be positive");
    Workspace ws(g.n());
    return step_once(g, state, sched, dt, w, Method::Euler, ws);
}

TimeSeries integrate(const TopologySchedule& topo, const InfectionState& init, const NodeSchedules& sched,
                     double dt, int steps, const IntegrateOptions& opts)
{
    const int n = topo.n();
    if (init.n() != n) throw std::invalid_argument("integrate: state size != graph size");
    sched.validate(n);
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (steps < 0) throw std::invalid_argument("integrate: negative step count");

    InfectionState state = init;
    Workspace ws(n);
    TimeSeries ts;
    ts.node_stride = opts.node_stride;
    if (opts.node_stride > 0) {
        const Graph& g0 = topo.at(state.t);
        ts.node_ids.resize(n);
        for (int v = 0; v < n; ++v) ts.node_ids[v] = g0.original_id(v);
    }
    ts.t.reserve(steps + 1);
    ts.sum_i.reserve(steps + 1);

    auto record = [&](int step) {
        ts.t.push_back(state.t);
        ts.sum_i.push_back(kernels::sum(state.i));
        if (opts.node_stride > 0 && step % opts.node_stride == 0) {
            ts.snapshot_t.push_back(state.t);
            ts.snapshots.push_back(state.i);
        }
    };

    record(0);
    for (int step = 0; step < steps; ++step) {
        const Graph& g = topo.at(state.t);
        StepStats stats = step_once(g, state, sched, dt, {}, opts.method, ws);
        ts.clamp_events.push_back(stats.clamps);
        ts.total_clamps += stats.clamps;
        record(step + 1);
        if (opts.stop_below >= 0.0 && ts.sum_i.back() < opts.stop_below) break;
    }
    return ts;
}

TimeSeries integrate(const Graph& g, const InfectionState& init, const NodeSchedules& sched, double dt,
                     int steps, const IntegrateOptions& opts)
{
    return integrate(TopologySchedule(g), init, sched, dt, steps, opts);
}

void linear_step(const Graph& g, std::vector<double>& x, double t, const NodeSchedules& sched, double dt)
{
    if (static_cast<int>(x.size()) != g.n())
        throw std::invalid_argument("linear_step: vector size != graph size");
    std::vector<double> beta(g.n()), deriv(g.n());
    sched.materialize_beta(t, beta);
    kernels::linear_deriv(g, x, beta, sched.gamma_at(t), deriv);
    for (int v = 0; v < g.n(); ++v) x[v] += dt * deriv[v];
}

MLEEstimate estimate_mle(const TopologySchedule& topo, const NodeSchedules& sched, double horizon,
                         double dt, double renorm_interval)
{
    const int n = topo.n();
    sched.validate(n);
    if (!(horizon > 0.0)) throw std::invalid_argument("estimate_mle: horizon must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("estimate_mle: dt must be positive");
    if (!(renorm_interval > 0.0))
        throw std::invalid_argument("estimate_mle: renorm interval must be positive");

    const long long total_steps = std::llround(horizon / dt);
    if (total_steps < 1) throw std::invalid_argument("estimate_mle: horizon shorter than one step");
    long long renorm_every = std::llround(renorm_interval / dt);
    if (renorm_every < 1) renorm_every = 1;

    // Unit 1-norm from the start; the initial scaling is direction setup,
    // not growth, so it must not enter log_total.
    std::vector<double> x(n, 1.0 / n), beta(n), deriv(n);
    double log_total = 0.0;
    double t = 0.0;

    MLEEstimate est;
    est.horizon = total_steps * dt;
    est.renorm_interval = renorm_every * dt;

    auto renormalize = [&]() {
        double norm = 0.0;
        for (double v : x) norm += std::abs(v);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "estimate_mle: degenerate norm %.6g at t=%.6g", norm, t);
            throw std::runtime_error(buf);
        }
        log_total += std::log(norm);
        for (double& v : x) v /= norm;
        est.log_norm_trace.emplace_back(t, log_total);
    };

    for (long long step = 0; step < total_steps; ++step) {
        const Graph& g = topo.at(t);
        sched.materialize_beta(t, beta);
        kernels::linear_deriv(g, x, beta, sched.gamma_at(t), deriv);
        for (int v = 0; v < n; ++v) x[v] += dt * deriv[v];
        t = (step + 1) * dt;

        bool scheduled = (step + 1) % renorm_every == 0;
        if (!scheduled) {
            // Guard against overflow/underflow between scheduled renorms.
            double peak = 0.0;
            for (double v : x) peak = std::max(peak, std::abs(v));
            scheduled = peak > 1e150 || (peak > 0.0 && peak < 1e-150);
        }
        if (scheduled) renormalize();
    }
    if (est.log_norm_trace.empty() || est.log_norm_trace.back().first != t) renormalize();

    est.mu = log_total / est.horizon;
    return est;
}

MLEEstimate estimate_mle(const Graph& g, const NodeSchedules& sched, double horizon, double dt,
                         double renorm_interval)
{
    return estimate_mle(TopologySchedule(g), sched, horizon, dt, renorm_interval);
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::DiesOut: return "DiesOut";
    case Verdict::Persists: return "Persists";
    default: return "Inconclusive";
    }
}

ThresholdReport threshold_check(double lambda1, const ParamSchedule& beta_sched,
                                const ParamSchedule& gamma_sched, double tie_tol)
{
    if (!(lambda1 > 0.0)) throw std::invalid_argument("threshold_check: lambda1 must be positive");
    ThresholdReport rep;
    rep.lambda1 = lambda1;
    rep.beta_bar = beta_sched.stationary_mean();
    rep.gamma_bar = gamma_sched.stationary_mean();
    if (rep.gamma_bar <= 0.0)
        throw std::invalid_argument("threshold_check: mean infection rate is zero; nothing spreads");
    rep.ratio = rep.beta_bar / rep.gamma_bar;
    rep.margin = rep.ratio - lambda1;
    double tol = tie_tol * lambda1;
    if (rep.margin > tol)
        rep.verdict = Verdict::DiesOut;
    else if (rep.margin < -tol)
        rep.verdict = Verdict::Persists;
    else
        rep.verdict = Verdict::Inconclusive;
    return rep;
}

ThresholdReport threshold_check(double lambda1, const NodeSchedules& sched, double tie_tol)
{
    if (sched.per_node())
        throw std::invalid_argument(
            "threshold_check needs one shared cure schedule; per-node rates call for estimate_mle");
    if (sched.beta.empty()) throw std::invalid_argument("threshold_check: no cure schedule set");
    return threshold_check(lambda1, sched.beta.front(), sched.gamma, tie_tol);
}

} // namespace episis
