#include "episis/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "episis/dynamics.hpp"
#include "episis/rng.hpp"

namespace episis {

namespace {

int validate_and_seed_count(const SimConfig& cfg)
{
    if (cfg.graph == nullptr) throw std::invalid_argument("simulate: no graph set");
    const int n = cfg.graph->n();
    cfg.schedules.validate(n);
    if (cfg.replicates < 1) throw std::invalid_argument("simulate: replicates must be >= 1");
    if (cfg.steps < 0) throw std::invalid_argument("simulate: negative step count");
    if (cfg.freq_stride < 0) throw std::invalid_argument("simulate: negative frequency stride");
    if (!cfg.seed_nodes.empty()) {
        std::vector<int> seen = cfg.seed_nodes;
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
            throw std::invalid_argument("simulate: duplicate seed node");
        if (seen.front() < 0 || seen.back() >= n)
            throw std::invalid_argument("simulate: seed node out of range");
        return static_cast<int>(seen.size());
    }
    if (!(cfg.initial_fraction >= 0.0) || cfg.initial_fraction > 1.0)
        throw std::invalid_argument("simulate: initial_fraction must be in [0,1]");
    if (cfg.initial_fraction == 0.0) return 0; // nothing seeded; trivially all-susceptible
    long long k = std::llround(cfg.initial_fraction * n);
    if (k < 1) throw std::invalid_argument("simulate: initial_fraction seeds no node");
    return static_cast<int>(std::min<long long>(k, n));
}

/// First k entries of a Fisher-Yates pass over 0..n-1.
void draw_seeds(CounterRng& rng, int n, int k, std::vector<int>& ids, std::vector<std::uint8_t>& inf)
{
    ids.resize(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int j = 0; j < k; ++j) {
        int pick = j + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - j)));
        std::swap(ids[j], ids[pick]);
    }
    std::fill(inf.begin(), inf.end(), std::uint8_t{0});
    for (int j = 0; j < k; ++j) inf[ids[j]] = 1;
}

} // namespace

SimResult run(const SimConfig& cfg)
{
    const int k = validate_and_seed_count(cfg);
    const Graph& g = *cfg.graph;
    const int n = g.n();
    const int steps = cfg.steps;
    const int stride = cfg.freq_stride;
    const int snapshots = stride > 0 ? steps / stride + 1 : 0;

    std::vector<std::int64_t> count_sum(steps + 1, 0);
    std::vector<std::int64_t> freq_sum(static_cast<std::size_t>(snapshots) * n, 0);

#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < cfg.replicates; ++rep) {
        CounterRng rng(mix64(cfg.rng_seed, static_cast<std::uint64_t>(rep)));
        std::vector<std::uint8_t> inf(n, 0), next(n, 0);
        std::vector<int> ids;
        std::vector<double> beta(n);

        if (cfg.seed_nodes.empty()) {
            draw_seeds(rng, n, k, ids, inf);
        } else {
            for (int v : cfg.seed_nodes) inf[v] = 1;
        }

        auto record = [&](int step) {
            std::int64_t count = 0;
            for (int v = 0; v < n; ++v) count += inf[v];
#pragma omp atomic
            count_sum[step] += count;
            if (stride > 0 && step % stride == 0) {
                std::size_t base = static_cast<std::size_t>(step / stride) * n;
                for (int v = 0; v < n; ++v) {
                    if (inf[v]) {
#pragma omp atomic
                        freq_sum[base + v] += 1;
                    }
                }
            }
        };

        record(0);
        for (int step = 0; step < steps; ++step) {
            double t = step;
            double gamma = cfg.schedules.gamma_at(t);
            cfg.schedules.materialize_beta(t, beta);
            for (int v = 0; v < n; ++v) {
                double u = rng.next_unit();
                if (inf[v]) {
                    next[v] = u < beta[v] ? 0 : 1;
                } else {
                    double keep = 1.0;
                    for (int nb : g.in_neighbors(v))
                        if (inf[nb]) keep *= 1.0 - gamma;
                    next[v] = u < 1.0 - keep ? 1 : 0;
                }
            }
            std::swap(inf, next);
            record(step + 1);
        }
    }

    SimResult res;
    res.replicates = cfg.replicates;
    res.mean_infected.resize(steps + 1);
    for (int s = 0; s <= steps; ++s)
        res.mean_infected[s] = static_cast<double>(count_sum[s]) / cfg.replicates;
    if (stride > 0) {
        res.freq_t.resize(snapshots);
        res.frequencies.assign(snapshots, std::vector<double>(n));
        for (int s = 0; s < snapshots; ++s) {
            res.freq_t[s] = static_cast<double>(s) * stride;
            for (int v = 0; v < n; ++v)
                res.frequencies[s][v] =
                    static_cast<double>(freq_sum[static_cast<std::size_t>(s) * n + v]) / cfg.replicates;
        }
    }
    return res;
}

TimeSeries SimResult::to_timeseries(const Graph& g, int freq_stride) const
{
    TimeSeries ts;
    ts.t.resize(mean_infected.size());
    for (std::size_t s = 0; s < ts.t.size(); ++s) ts.t[s] = static_cast<double>(s);
    ts.sum_i = mean_infected;
    if (!frequencies.empty()) {
        ts.node_stride = freq_stride;
        ts.snapshot_t = freq_t;
        ts.snapshots = frequencies;
        ts.node_ids.resize(g.n());
        for (int v = 0; v < g.n(); ++v) ts.node_ids[v] = g.original_id(v);
    }
    return ts;
}

DiscrepancyReport compare_with_model(const SimConfig& cfg, double dt)
{
    const int k = validate_and_seed_count(cfg);
    if (!(dt > 0.0)) throw std::invalid_argument("compare_with_model: dt must be positive");
    const long long per_unit = std::llround(1.0 / dt);
    if (per_unit < 1 || std::abs(per_unit * dt - 1.0) > 1e-9)
        throw std::invalid_argument("compare_with_model: dt must divide the unit step");

    const Graph& g = *cfg.graph;
    const int n = g.n();

    InfectionState init(n, 0.0);
    if (cfg.seed_nodes.empty()) {
        // Uniform random seeding has i_v(0) = k/n for every node.
        std::fill(init.i.begin(), init.i.end(), static_cast<double>(k) / n);
    } else {
        for (int v : cfg.seed_nodes) init.i[v] = 1.0;
    }

    SimResult sim = run(cfg);
    TimeSeries model =
        integrate(g, init, cfg.schedules, dt, static_cast<int>(cfg.steps * per_unit));

    DiscrepancyReport rep;
    rep.n = n;
    rep.sim_curve = sim.mean_infected;
    rep.model_curve.resize(cfg.steps + 1);
    double total = 0.0;
    for (int s = 0; s <= cfg.steps; ++s) {
        rep.model_curve[s] = model.sum_i[s * per_unit];
        double diff = std::abs(sim.mean_infected[s] - rep.model_curve[s]);
        rep.max_abs = std::max(rep.max_abs, diff);
        total += diff;
    }
    rep.mean_abs = total / (cfg.steps + 1);
    rep.max_norm = rep.max_abs / n;
    rep.mean_norm = rep.mean_abs / n;
    return rep;
}

} // namespace episis
