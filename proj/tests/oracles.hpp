#ifndef EPISIS_TEST_ORACLES_HPP
#define EPISIS_TEST_ORACLES_HPP

// Independent reference computations the tests check the library against.
// Deliberately naive: dense cyclic Jacobi for eigenvalues, full 2^n state
// enumeration for the exact stochastic process. Only usable at desk scale.

#include <cmath>
#include <cstddef>
#include <vector>

#include "episis/graph.hpp"
#include "episis/schedule.hpp"

namespace oracle {

/// Largest eigenvalue of a symmetric matrix by cyclic Jacobi rotations.
inline double jacobi_lambda_max(std::vector<std::vector<double>> a)
{
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double sign = theta >= 0.0 ? 1.0 : -1.0;
                double tt = sign / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(tt * tt + 1.0);
                double s = tt * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double best = a[0][0];
    for (std::size_t k = 1; k < n; ++k) best = std::max(best, a[k][k]);
    return best;
}

inline std::vector<std::vector<double>> dense_adjacency(const episis::Graph& g)
{
    std::vector<std::vector<double>> a(g.n(), std::vector<double>(g.n(), 0.0));
    for (int v = 0; v < g.n(); ++v)
        for (int u : g.in_neighbors(v)) a[v][u] = 1.0;
    return a;
}

/// Exact discrete-time SIS chain over all 2^n joint states. Susceptible v
/// becomes infected with probability 1 - (1-gamma)^(infected in-neighbors);
/// infected v is cured with probability beta_v. All transitions evaluated
/// from the time-t state. Tractable for n <= ~12.
class ExactChain {
public:
    ExactChain(const episis::Graph& g, std::vector<int> seed_nodes) : g_(&g), n_(g.n())
    {
        dist_.assign(std::size_t{1} << n_, 0.0);
        std::size_t s0 = 0;
        for (int v : seed_nodes) s0 |= std::size_t{1} << v;
        dist_[s0] = 1.0;
    }

    /// One synchronous step with the given rates.
    void step(double gamma, const std::vector<double>& beta)
    {
        const std::size_t states = dist_.size();
        std::vector<double> next(states, 0.0);
        for (std::size_t s = 0; s < states; ++s) {
            if (dist_[s] == 0.0) continue;
            // per-node infection probability conditioned on joint state s
            std::vector<double> p(n_);
            for (int v = 0; v < n_; ++v) {
                if (s >> v & 1) {
                    p[v] = 1.0 - beta[v]; // stays infected
                } else {
                    double keep = 1.0;
                    for (int u : g_->in_neighbors(v))
                        if (s >> u & 1) keep *= 1.0 - gamma;
                    p[v] = 1.0 - keep;
                }
            }
            for (std::size_t r = 0; r < states; ++r) {
                double w = dist_[s];
                for (int v = 0; v < n_ && w > 0.0; ++v)
                    w *= (r >> v & 1) ? p[v] : 1.0 - p[v];
                next[r] += w;
            }
        }
        dist_ = std::move(next);
    }

    void step(const episis::NodeSchedules& sched, double t)
    {
        std::vector<double> beta(n_);
        sched.materialize_beta(t, beta);
        step(sched.gamma_at(t), beta);
    }

    double node_marginal(int v) const
    {
        double total = 0.0;
        for (std::size_t s = 0; s < dist_.size(); ++s)
            if (s >> v & 1) total += dist_[s];
        return total;
    }

    double expected_infected() const
    {
        double total = 0.0;
        for (int v = 0; v < n_; ++v) total += node_marginal(v);
        return total;
    }

    const std::vector<double>& distribution() const { return dist_; }

private:
    const episis::Graph* g_;
    int n_;
    std::vector<double> dist_;
};

} // namespace oracle

#endif
