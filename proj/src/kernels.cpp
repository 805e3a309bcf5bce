#include "episis/kernels.hpp"

namespace episis::kernels {

namespace {

inline double pressure_at(const Graph& g, std::span<const double> infect, double gamma, int v)
{
    double escape = 1.0;
    for (int u : g.in_neighbors(v))
        escape *= 1.0 - gamma * infect[u];
    return 1.0 - escape;
}

} // namespace

void pressure_serial(const Graph& g, std::span<const double> infect, double gamma, std::span<double> out)
{
    const int n = g.n();
    for (int v = 0; v < n; ++v)
        out[v] = pressure_at(g, infect, gamma, v);
}

void pressure(const Graph& g, std::span<const double> infect, double gamma, std::span<double> out)
{
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n > 256)
    for (int v = 0; v < n; ++v)
        out[v] = pressure_at(g, infect, gamma, v);
}

void master_deriv_serial(const Graph& g, std::span<const double> infect, std::span<const double> beta,
                         double gamma, const double* w, std::span<double> out)
{
    const int n = g.n();
    for (int v = 0; v < n; ++v) {
        double d = pressure_at(g, infect, gamma, v) * (1.0 - infect[v]) - beta[v] * infect[v];
        if (w)
            d += w[v];
        out[v] = d;
    }
}

void master_deriv(const Graph& g, std::span<const double> infect, std::span<const double> beta,
                  double gamma, const double* w, std::span<double> out)
{
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n > 256)
    for (int v = 0; v < n; ++v) {
        double d = pressure_at(g, infect, gamma, v) * (1.0 - infect[v]) - beta[v] * infect[v];
        if (w)
            d += w[v];
        out[v] = d;
    }
}

void linear_deriv_serial(const Graph& g, std::span<const double> x, std::span<const double> beta,
                         double gamma, std::span<double> out)
{
    const int n = g.n();
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u : g.in_neighbors(v))
            acc += x[u];
        out[v] = gamma * acc - beta[v] * x[v];
    }
}

void linear_deriv(const Graph& g, std::span<const double> x, std::span<const double> beta,
                  double gamma, std::span<double> out)
{
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n > 256)
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u : g.in_neighbors(v))
            acc += x[u];
        out[v] = gamma * acc - beta[v] * x[v];
    }
}

void adjacency_matvec_serial(const Graph& g, std::span<const double> x, std::span<double> out)
{
    const int n = g.n();
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u : g.in_neighbors(v))
            acc += x[u];
        out[v] = acc;
    }
}

void adjacency_matvec(const Graph& g, std::span<const double> x, std::span<double> out)
{
    const int n = g.n();
#pragma omp parallel for schedule(static) if (n > 256)
    for (int v = 0; v < n; ++v) {
        double acc = 0.0;
        for (int u : g.in_neighbors(v))
            acc += x[u];
        out[v] = acc;
    }
}

double sum(std::span<const double> x)
{
    double acc = 0.0;
    for (double v : x)
        acc += v;
    return acc;
}

} // namespace episis::kernels
