#ifndef EPISIS_KERNELS_HPP
#define EPISIS_KERNELS_HPP

#include <span>

#include "episis/graph.hpp"

namespace episis::kernels {

// Per-node inner loops of the model. Each kernel exists twice: an
// OpenMP-parallel version (the one the library calls) and a serial
// reference twin. The twins compute element v with bit-identical
// floating-point operations in the same order, so the test suite can
// assert exact equality; reductions never happen inside a parallel
// region (callers sum results serially), which keeps outputs
// byte-stable under any thread count.

/// out[v] = 1 - prod_{u in in(v)} (1 - gamma * infect[u]); 0 for isolated v.
void pressure(const Graph& g, std::span<const double> infect, double gamma, std::span<double> out);
void pressure_serial(const Graph& g, std::span<const double> infect, double gamma, std::span<double> out);

/// Master-equation right-hand side:
/// out[v] = pressure_v * (1 - i[v]) - beta[v] * i[v]  (+ w[v] if given).
void master_deriv(const Graph& g, std::span<const double> infect, std::span<const double> beta,
                  double gamma, const double* w, std::span<double> out);
void master_deriv_serial(const Graph& g, std::span<const double> infect, std::span<const double> beta,
                         double gamma, const double* w, std::span<double> out);

/// Linear comparison-system right-hand side: out = (gamma*A - diag(beta)) x.
void linear_deriv(const Graph& g, std::span<const double> x, std::span<const double> beta,
                  double gamma, std::span<double> out);
void linear_deriv_serial(const Graph& g, std::span<const double> x, std::span<const double> beta,
                         double gamma, std::span<double> out);

/// out[v] = sum_{u in in(v)} x[u].
void adjacency_matvec(const Graph& g, std::span<const double> x, std::span<double> out);
void adjacency_matvec_serial(const Graph& g, std::span<const double> x, std::span<double> out);

/// Deterministic left-to-right sum (reduction helper for the callers).
double sum(std::span<const double> x);

} // namespace episis::kernels

#endif
