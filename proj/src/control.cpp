#include "episis/control.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "episis/kernels.hpp"

namespace episis {

DieOutController::DieOutController(int n, double rho_) : rho(rho_), beta(n, 0.0)
{
    if (n < 1) throw std::invalid_argument("die-out controller: need at least one node");
    if (!(rho >= 0.0)) throw std::invalid_argument("die-out controller: rho must be >= 0");
}

void dieout_step(DieOutController& ctrl, std::span<const double> i, double dt)
{
    if (i.size() != ctrl.beta.size())
        throw std::invalid_argument("dieout_step: state size != controller size");
    if (!(dt > 0.0)) throw std::invalid_argument("dieout_step: dt must be positive");
    for (std::size_t v = 0; v < i.size(); ++v) {
        double b = ctrl.beta[v] + dt * ctrl.rho * i[v];
        if (b > 1.0) {
            b = 1.0;
            ++ctrl.clamp_events;
        }
        ctrl.beta[v] = b;
    }
}

std::vector<double> beta_star(const Graph& g, double gamma, const std::vector<double>& i_star)
{
    if (static_cast<int>(i_star.size()) != g.n())
        throw std::invalid_argument("beta_star: target size != graph size");
    if (!(gamma >= 0.0) || gamma > 1.0)
        throw std::invalid_argument("beta_star: gamma must be in [0,1]");
    for (std::size_t v = 0; v < i_star.size(); ++v) {
        if (!(i_star[v] > 0.0) || i_star[v] > 1.0)
            throw std::invalid_argument("beta_star: target at node " + std::to_string(v) +
                                        " must be in (0,1]");
    }
    std::vector<double> out(g.n());
    for (int v = 0; v < g.n(); ++v) {
        double keep = 1.0;
        for (int u : g.in_neighbors(v)) keep *= 1.0 - gamma * i_star[u];
        out[v] = (1.0 - keep) * (1.0 - i_star[v]) / i_star[v];
    }
    return out;
}

ContainController make_contain_controller(const Graph& g, double gamma, std::vector<double> i_star,
                                          double rho, double eta, WMode w_mode,
                                          std::vector<double> beta0, double lambda1)
{
    if (!(rho > 0.0)) throw std::invalid_argument("containment controller: rho must be > 0");
    if (!(eta >= 0.0)) throw std::invalid_argument("containment controller: eta must be >= 0");
    ContainController ctrl;
    ctrl.rho = rho;
    ctrl.eta = eta;
    ctrl.w_mode = w_mode;
    ctrl.beta_star = beta_star(g, gamma, i_star);
    ctrl.i_star = std::move(i_star);
    if (beta0.empty()) {
        ctrl.beta.assign(g.n(), 0.0);
    } else {
        if (static_cast<int>(beta0.size()) != g.n())
            throw std::invalid_argument("containment controller: beta0 size != graph size");
        for (double b : beta0)
            if (!(b >= 0.0) || b > 1.0)
                throw std::invalid_argument("containment controller: beta0 entries must be in [0,1]");
        ctrl.beta = std::move(beta0);
    }
    if (w_mode == WMode::Proportional) {
        if (lambda1 < 0.0) lambda1 = largest_eigenvalue(g).lambda1;
        double min_bs = *std::min_element(ctrl.beta_star.begin(), ctrl.beta_star.end());
        if (!(eta + min_bs > 1.0 + gamma * lambda1)) {
            std::ostringstream msg;
            msg << "containment gain condition fails: eta + min beta* = " << eta + min_bs
                << " must exceed 1 + gamma*lambda1 = " << 1.0 + gamma * lambda1;
            throw std::invalid_argument(msg.str());
        }
    }
    return ctrl;
}

void contain_step(ContainController& ctrl, std::span<const double> i, double dt,
                  std::span<double> w_out)
{
    const std::size_t n = ctrl.beta.size();
    if (i.size() != n) throw std::invalid_argument("contain_step: state size != controller size");
    if (!w_out.empty() && w_out.size() != n)
        throw std::invalid_argument("contain_step: w output size != controller size");
    if (!(dt > 0.0)) throw std::invalid_argument("contain_step: dt must be positive");
    for (std::size_t v = 0; v < n; ++v) {
        double b = ctrl.beta[v] + dt * ctrl.rho * (i[v] - ctrl.i_star[v]) * i[v];
        if (b > 1.0) {
            b = 1.0;
            ++ctrl.clamp_events;
        } else if (b < 0.0) {
            b = 0.0;
            ++ctrl.clamp_events;
        }
        ctrl.beta[v] = b;
        if (!w_out.empty())
            w_out[v] = ctrl.w_mode == WMode::Proportional ? ctrl.eta * (ctrl.i_star[v] - i[v]) : 0.0;
    }
}

namespace {

/// Shared closed-loop driver. `fill_w` writes the control input from the
/// current state, `advance` updates the controller's beta from it, and
/// `integrand` is the quantity whose time integral the propositions bound.
template <typename FillW, typename Advance, typename Integrand>
ControlledRun drive(const Graph& g, const InfectionState& init, const ParamSchedule& gamma_sched,
                    std::vector<double>& beta, std::int64_t& ctrl_clamps, double dt, int steps,
                    const ControlledRunOptions& opts, FillW fill_w, Advance advance,
                    Integrand integrand)
{
    const int n = g.n();
    if (init.n() != n) throw std::invalid_argument("run_controlled: state size != graph size");
    if (static_cast<int>(beta.size()) != n)
        throw std::invalid_argument("run_controlled: controller size != graph size");
    if (!(dt > 0.0)) throw std::invalid_argument("run_controlled: dt must be positive");
    if (steps < 0) throw std::invalid_argument("run_controlled: negative step count");
    if (opts.record_stride < 1)
        throw std::invalid_argument("run_controlled: record stride must be >= 1");

    double threshold = opts.integral_threshold >= 0.0 ? opts.integral_threshold
                                                      : extinction_threshold(n);

    ControlledRun run;
    TimeSeries& ts = run.series;
    std::vector<double> i = init.i;
    std::vector<double> deriv(n), w(n, 0.0);
    double t = init.t;

    auto beta_stats = [&]() {
        double total = 0.0, peak = 0.0;
        for (double b : beta) {
            total += b;
            peak = std::max(peak, b);
        }
        ts.mean_beta.push_back(total / n);
        ts.max_beta.push_back(peak);
    };

    auto record = [&](int step, std::int64_t clamps) {
        ts.t.push_back(t);
        ts.sum_i.push_back(kernels::sum(i));
        beta_stats();
        ts.clamp_events.push_back(clamps);
        ts.total_clamps += clamps;
        if (opts.node_stride > 0 && step % opts.node_stride == 0) {
            ts.snapshot_t.push_back(t);
            ts.snapshots.push_back(i);
        }
    };

    ts.node_stride = opts.node_stride;
    if (opts.node_stride > 0) {
        ts.node_ids.resize(n);
        for (int v = 0; v < n; ++v) ts.node_ids[v] = g.original_id(v);
    }
    record(0, 0);

    double f_prev = integrand(i);
    bool accumulating = f_prev >= threshold;
    run.reached_threshold = !accumulating;
    run.truncation_time = t;
    std::int64_t pending_clamps = 0;

    for (int step = 0; step < steps; ++step) {
        fill_w(i, w);
        const double* wp = w.data();
        kernels::master_deriv(g, i, beta, gamma_sched.eval(t), wp, deriv);
        std::int64_t clamps_before = ctrl_clamps;
        advance(i);
        std::int64_t clamps = ctrl_clamps - clamps_before;
        for (int v = 0; v < n; ++v) {
            double p = i[v] + dt * deriv[v];
            if (p < 0.0) {
                p = 0.0;
                ++clamps;
            } else if (p > 1.0) {
                p = 1.0;
                ++clamps;
            }
            if (!std::isfinite(p))
                throw std::runtime_error("run_controlled: non-finite state at node " +
                                         std::to_string(v));
            i[v] = p;
        }
        t = init.t + (step + 1) * dt;
        pending_clamps += clamps;

        double f = integrand(i);
        if (accumulating) {
            run.observed_integral += 0.5 * dt * (f_prev + f);
            run.truncation_time = t;
            if (f < threshold) {
                accumulating = false;
                run.reached_threshold = true;
            }
        }
        f_prev = f;

        bool stopping = opts.stop_run_at_threshold && run.reached_threshold;
        if ((step + 1) % opts.record_stride == 0 || step + 1 == steps || stopping) {
            record(step + 1, pending_clamps);
            pending_clamps = 0;
        }
        if (stopping) break;
    }

    run.final_i = std::move(i);
    run.final_beta = beta;
    return run;
}

} // namespace

ControlledRun run_controlled(const Graph& g, const InfectionState& init,
                             const ParamSchedule& gamma_sched, DieOutController& ctrl, double dt,
                             int steps, const ControlledRunOptions& opts)
{
    return drive(
        g, init, gamma_sched, ctrl.beta, ctrl.clamp_events, dt, steps, opts,
        [](const std::vector<double>&, std::vector<double>& w) {
            std::fill(w.begin(), w.end(), 0.0);
        },
        [&](const std::vector<double>& i) { dieout_step(ctrl, i, dt); },
        [](const std::vector<double>& i) { return kernels::sum(i); });
}

ControlledRun run_controlled(const Graph& g, const InfectionState& init,
                             const ParamSchedule& gamma_sched, ContainController& ctrl, double dt,
                             int steps, const ControlledRunOptions& opts)
{
    if (static_cast<int>(ctrl.i_star.size()) != g.n())
        throw std::invalid_argument("run_controlled: target size != graph size");
    return drive(
        g, init, gamma_sched, ctrl.beta, ctrl.clamp_events, dt, steps, opts,
        [&](const std::vector<double>& i, std::vector<double>& w) {
            if (ctrl.w_mode == WMode::Proportional) {
                for (std::size_t v = 0; v < i.size(); ++v)
                    w[v] = ctrl.eta * (ctrl.i_star[v] - i[v]);
            } else {
                std::fill(w.begin(), w.end(), 0.0);
            }
        },
        [&](const std::vector<double>& i) { contain_step(ctrl, i, dt); },
        [&](const std::vector<double>& i) {
            double total = 0.0;
            for (std::size_t v = 0; v < i.size(); ++v) total += std::abs(i[v] - ctrl.i_star[v]);
            return total;
        });
}

BoundReport prop1_bound(int n, double rho, double gamma_m, double sum_i0)
{
    if (!(rho > 0.0)) throw std::invalid_argument("prop1_bound: rho must be > 0");
    if (n < 1) throw std::invalid_argument("prop1_bound: need at least one node");
    if (gamma_m < 0.0 || sum_i0 < 0.0)
        throw std::invalid_argument("prop1_bound: gamma_m and sum_i0 must be >= 0");
    const double m = n - 1;
    BoundReport rep;
    rep.name = "dieout_integral_bound";
    rep.bound_value = m * m * gamma_m / rho + m / rho * std::sqrt(sum_i0 + m * m * m * gamma_m * gamma_m / (2.0 * rho));
    rep.inputs = {{"n", static_cast<double>(n)},
                  {"rho", rho},
                  {"gamma_m", gamma_m},
                  {"sum_i0", sum_i0}};
    return rep;
}

BoundReport prop2_bound(double rho, double eta, double gamma, double lambda1,
                        const std::vector<double>& i0, const std::vector<double>& i_star,
                        const std::vector<double>& beta0, const std::vector<double>& beta_star)
{
    if (!(rho > 0.0)) throw std::invalid_argument("prop2_bound: rho must be > 0");
    const std::size_t n = i0.size();
    if (i_star.size() != n || beta0.size() != n || beta_star.size() != n)
        throw std::invalid_argument("prop2_bound: vector sizes disagree");
    const double denom = eta - 1.0 - gamma * lambda1;
    if (!(denom > 0.0)) {
        std::ostringstream msg;
        msg << "prop2_bound gain condition fails: eta = " << eta
            << " must exceed 1 + gamma*lambda1 = " << 1.0 + gamma * lambda1;
        throw std::invalid_argument(msg.str());
    }
    double si = 0.0, sb = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        si += (i0[v] - i_star[v]) * (i0[v] - i_star[v]);
        sb += (beta0[v] - beta_star[v]) * (beta0[v] - beta_star[v]);
    }
    BoundReport rep;
    rep.name = "containment_tracking_bound";
    rep.bound_value = (0.5 * si + sb / (2.0 * rho)) / denom;
    rep.inputs = {{"n", static_cast<double>(n)},
                  {"rho", rho},
                  {"eta", eta},
                  {"gamma", gamma},
                  {"lambda1", lambda1},
                  {"sum_sq_i_err", si},
                  {"sum_sq_beta_err", sb}};
    return rep;
}

void BoundReport::attach_observation(const ControlledRun& run)
{
    observed_integral = run.observed_integral;
    truncation_time = run.truncation_time;
    has_observation = true;
}

void write_report(std::ostream& out, const BoundReport& rep)
{
    out << "report: " << rep.name << "\n";
    for (const auto& [key, value] : rep.inputs) out << key << ": " << format_double(value) << "\n";
    out << "bound_value: " << format_double(rep.bound_value) << "\n";
    if (rep.has_observation) {
        out << "observed_integral: " << format_double(rep.observed_integral) << "\n";
        out << "truncation_time: " << format_double(rep.truncation_time) << "\n";
        out << "conforms: " << (rep.conforms() ? "yes" : "no") << "\n";
    }
}

std::string report_text(const BoundReport& rep)
{
    std::ostringstream out;
    write_report(out, rep);
    return out.str();
}

} // namespace episis
