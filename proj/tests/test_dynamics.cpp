#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "episis/dynamics.hpp"
#include "episis/graph_gen.hpp"
#include "episis/kernels.hpp"
#include "episis/rng.hpp"
#include "episis/timeseries.hpp"

using namespace episis;

namespace {

NodeSchedules constant_sched(double beta, double gamma)
{
    return {{ParamSchedule::constant(beta)}, ParamSchedule::constant(gamma)};
}

Graph single_node()
{
    // a 2-node directed arc 1 -> 0 never touches node 1, and an explicit
    // n=1 graph has no edges at all; use the latter
    return Graph(1, {}, false);
}

} // namespace

TEST_CASE("infection_pressure: hand cases")
{
    Graph g = gen::path(3);
    InfectionState none(3, 0.0);
    CHECK(infection_pressure(g, none, 0.5, 1) == 0.0);

    InfectionState ends(std::vector<double>{0.5, 0.0, 0.5});
    CHECK(infection_pressure(g, ends, 0.5, 1) == 0.4375);

    InfectionState one(std::vector<double>{1.0, 0.0, 0.0});
    CHECK(infection_pressure(g, one, 0.5, 1) == 0.5);

    // no in-neighbors
    Graph lone = single_node();
    InfectionState s(1, 0.9);
    CHECK(infection_pressure(lone, s, 0.5, 0) == 0.0);
}

TEST_CASE("master_step: isolated node Euler update")
{
    Graph g = single_node();
    InfectionState s(1, 0.5);
    master_step(g, s, constant_sched(0.1, 0.3), 1.0);
    CHECK(s.i[0] == doctest::Approx(0.45).epsilon(1e-15));
    CHECK(s.t == 1.0);
}

TEST_CASE("master_step: equilibria")
{
    Graph g = gen::complete(4);
    InfectionState zero(4, 0.0);
    master_step(g, zero, constant_sched(0.3, 0.1), 1.0);
    for (double p : zero.i) CHECK(p == 0.0);

    InfectionState s(std::vector<double>{0.1, 0.4, 0.7, 0.2});
    InfectionState before = s;
    master_step(g, s, constant_sched(0.0, 0.0), 1.0);
    CHECK(s.i == before.i);
}

TEST_CASE("state validation")
{
    CHECK_THROWS_AS(InfectionState(std::vector<double>{0.5, 1.2}), std::invalid_argument);
    CHECK_THROWS_AS(InfectionState(std::vector<double>{-0.1}), std::invalid_argument);
}

TEST_CASE("integrate: single-node exponential decay")
{
    Graph g = single_node();
    InfectionState init(1, 1.0);
    TimeSeries ts = integrate(g, init, constant_sched(0.5, 0.0), 0.01, 2000);
    CHECK(ts.t.size() == 2001);
    CHECK(ts.t[1000] == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(std::abs(ts.sum_i[1000] - std::exp(-5.0)) <= 1e-3);
    CHECK(ts.total_clamps == 0);
}

TEST_CASE("integrate: all-zero start stays flat")
{
    Graph g = gen::gnp(30, 0.2, 5);
    TimeSeries ts = integrate(g, InfectionState(30, 0.0),
                              {{ParamSchedule::square_wave(0.3, 0.5, 8.0)},
                               ParamSchedule::square_wave(0.003, 0.007, 8.0)},
                              1.0, 100);
    for (double s : ts.sum_i) CHECK(s == 0.0);
}

TEST_CASE("integrate: no clamping at moderate dt on test graphs")
{
    Graph g = gen::complete(4);
    NodeSchedules sched{{ParamSchedule::square_wave(0.3, 0.5, 8.0)},
                        ParamSchedule::square_wave(0.003, 0.007, 8.0)};
    TimeSeries ts = integrate(g, InfectionState(4, 0.2), sched, 0.1, 500);
    CHECK(ts.total_clamps == 0);
}

TEST_CASE("integrate: snapshot stride")
{
    Graph g = gen::complete(4);
    IntegrateOptions opts;
    opts.node_stride = 10;
    TimeSeries ts = integrate(g, InfectionState(4, 0.2), constant_sched(0.4, 0.05), 1.0, 25, opts);
    CHECK(ts.snapshot_t.size() == 3); // t = 0, 10, 20
    CHECK(ts.snapshots[0].size() == 4);
    CHECK(ts.snapshot_t[2] == 20.0);
    REQUIRE(ts.node_ids.size() == 4);

    // every row of the snapshot CSV lines up with the labeled header
    std::ostringstream csv;
    write_snapshot_csv(csv, ts);
    std::istringstream in(csv.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,sum_i,i_0,i_1,i_2,i_3");
    const auto cols = std::count(line.begin(), line.end(), ',');
    while (std::getline(in, line))
        CHECK(std::count(line.begin(), line.end(), ',') == cols);
}

TEST_CASE("integrate: Euler is first order, the 4-stage method is much better")
{
    Graph g = single_node();
    InfectionState init(1, 1.0);
    auto endpoint_error = [&](double dt, Method m) {
        IntegrateOptions opts;
        opts.method = m;
        int steps = static_cast<int>(std::llround(2.0 / dt));
        TimeSeries ts = integrate(g, init, constant_sched(0.5, 0.0), dt, steps, opts);
        return std::abs(ts.sum_i.back() - std::exp(-1.0));
    };

    double e1 = endpoint_error(0.02, Method::Euler);
    double e2 = endpoint_error(0.01, Method::Euler);
    CHECK(e1 / e2 == doctest::Approx(2.0).epsilon(0.1));

    CHECK(endpoint_error(0.1, Method::Rk4) < 1e-7);
}

TEST_CASE("topology switch: equals manual two-phase integration")
{
    Graph a = gen::complete(4);
    Graph b = gen::path(4);
    TopologySchedule topo({0.0, 5.0}, {&a, &b});
    NodeSchedules sched = constant_sched(0.2, 0.1);
    InfectionState init({0.1, 0.3, 0.5, 0.7});

    TimeSeries full = integrate(topo, init, sched, 1.0, 10);

    TimeSeries first = integrate(a, init, sched, 1.0, 5);
    InfectionState mid({0.0, 0.0, 0.0, 0.0});
    {
        // replay phase one to recover the state at the switch
        InfectionState s = init;
        for (int k = 0; k < 5; ++k) master_step(a, s, sched, 1.0);
        mid = s;
    }
    TimeSeries second = integrate(b, mid, sched, 1.0, 5);

    CHECK(full.sum_i[5] == first.sum_i[5]);
    CHECK(full.sum_i[10] == second.sum_i[5]);
}

TEST_CASE("topology schedule validation")
{
    Graph a = gen::complete(4);
    Graph b = gen::path(3);
    CHECK_THROWS_AS(TopologySchedule({0.0, 5.0}, {&a, &b}), std::invalid_argument);
    CHECK_THROWS_AS(TopologySchedule({1.0}, {&a}), std::invalid_argument);
    CHECK_THROWS_AS(TopologySchedule({0.0, 0.0}, {&a, &a}), std::invalid_argument);
}

TEST_CASE("linear_step: hand case and linearity at zero")
{
    Graph g = single_node();
    std::vector<double> x{1.0};
    linear_step(g, x, 0.0, constant_sched(0.5, 0.0), 1.0);
    CHECK(x[0] == 0.5);

    Graph k4 = gen::complete(4);
    std::vector<double> zero(4, 0.0);
    linear_step(k4, zero, 0.0, constant_sched(0.5, 0.1), 1.0);
    for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("comparison system dominates the master equation")
{
    NodeSchedules sched{{ParamSchedule::square_wave(0.3, 0.5, 8.0)},
                        ParamSchedule::square_wave(0.003, 0.007, 8.0)};
    for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        Graph g = gen::gnp(30, 0.15, seed);
        std::vector<double> x(30);
        for (int v = 0; v < 30; ++v) x[v] = unit_draw(seed * 1000, v);
        InfectionState state(x);

        for (int step = 0; step < 60; ++step) {
            linear_step(g, x, step * 1.0, sched, 1.0);
            master_step(g, state, sched, 1.0);
            for (int v = 0; v < 30; ++v) CHECK(x[v] >= state.i[v] - 1e-12);
        }
    }
}

TEST_CASE("estimate_mle: closed forms")
{
    // scalar system: mu = -beta exactly
    Graph lone = single_node();
    MLEEstimate scalar = estimate_mle(lone, constant_sched(0.5, 0.0), 200.0, 0.004, 1.0);
    CHECK(std::abs(scalar.mu - (-0.5)) <= 1e-3);

    // K4, constant rates: mu = gamma*lambda1 - beta = 0.3 - 0.5
    Graph k4 = gen::complete(4);
    MLEEstimate flat = estimate_mle(k4, constant_sched(0.5, 0.1), 200.0, 0.004, 1.0);
    CHECK(std::abs(flat.mu - (-0.2)) <= 1e-3);

    // K4, square-wave beta: mu = gamma*lambda1 - mean(beta) = 0.3 - 0.4
    NodeSchedules wave{{ParamSchedule::square_wave(0.3, 0.5, 8.0)}, ParamSchedule::constant(0.1)};
    MLEEstimate sq = estimate_mle(k4, wave, 800.0, 0.01, 8.0);
    CHECK(std::abs(sq.mu - (-0.1)) <= 1e-2);
}

TEST_CASE("estimate_mle: trace covers the horizon and renorms keep x finite")
{
    Graph k4 = gen::complete(4);
    MLEEstimate est = estimate_mle(k4, constant_sched(0.1, 0.2), 103.0, 0.01, 10.0);
    REQUIRE(!est.log_norm_trace.empty());
    CHECK(est.log_norm_trace.back().first == doctest::Approx(103.0).epsilon(1e-9));
    CHECK(est.log_norm_trace.back().second == doctest::Approx(est.mu * est.horizon).epsilon(1e-9));
    CHECK(std::isfinite(est.mu));

    // strongly growing system: forced renormalizations keep magnitudes sane
    MLEEstimate grow = estimate_mle(k4, constant_sched(0.0, 1.0), 500.0, 1.0, 1000.0);
    CHECK(std::isfinite(grow.mu));
    CHECK(grow.mu == doctest::Approx(std::log(4.0)).epsilon(1e-6)); // x <- x + 3x trebles... log(1+3)
}

TEST_CASE("threshold_check: paper ratios and verdicts")
{
    ParamSchedule beta_high = ParamSchedule::square_wave(0.3, 0.5, 8.0);
    ParamSchedule beta_low = ParamSchedule::square_wave(0.2, 0.4, 8.0);
    ParamSchedule gamma = ParamSchedule::square_wave(0.003, 0.007, 8.0);

    ThresholdReport dies = threshold_check(75.2407, beta_high, gamma);
    CHECK(dies.ratio == doctest::Approx(80.0).epsilon(1e-12));
    CHECK(dies.verdict == Verdict::DiesOut);
    CHECK(dies.margin > 0.0);

    ThresholdReport lives = threshold_check(75.2407, beta_low, gamma);
    CHECK(lives.ratio == doctest::Approx(60.0).epsilon(1e-12));
    CHECK(lives.verdict == Verdict::Persists);

    ThresholdReport tie = threshold_check(80.0, beta_high, gamma);
    CHECK(tie.verdict == Verdict::Inconclusive);

    CHECK_THROWS_AS(threshold_check(3.0, beta_high, ParamSchedule::constant(0.0)),
                    std::invalid_argument);
}

TEST_CASE("threshold_check: rejects per-node beta")
{
    NodeSchedules per{{ParamSchedule::constant(0.1), ParamSchedule::constant(0.2)},
                      ParamSchedule::constant(0.1)};
    CHECK_THROWS_WITH_AS(threshold_check(3.0, per), doctest::Contains("estimate_mle"),
                         std::invalid_argument);
}

TEST_CASE("threshold and MLE agree in sign for constant homogeneous parameters")
{
    Graph k4 = gen::complete(4);
    double lambda1 = largest_eigenvalue(k4).lambda1;

    // persists: ratio 2.5 < 3
    ThresholdReport rep = threshold_check(lambda1, ParamSchedule::constant(0.25),
                                          ParamSchedule::constant(0.1));
    CHECK(rep.verdict == Verdict::Persists);
    MLEEstimate est = estimate_mle(k4, constant_sched(0.25, 0.1), 200.0, 0.004, 1.0);
    CHECK(est.mu > 0.0);

    // dies out: ratio 4 > 3
    ThresholdReport rep2 = threshold_check(lambda1, ParamSchedule::constant(0.4),
                                           ParamSchedule::constant(0.1));
    CHECK(rep2.verdict == Verdict::DiesOut);
    MLEEstimate est2 = estimate_mle(k4, constant_sched(0.4, 0.1), 200.0, 0.004, 1.0);
    CHECK(est2.mu < 0.0);
}

TEST_CASE("verdict names")
{
    CHECK(std::string(to_string(Verdict::DiesOut)) == "DiesOut");
    CHECK(std::string(to_string(Verdict::Persists)) == "Persists");
    CHECK(std::string(to_string(Verdict::Inconclusive)) == "Inconclusive");
}
