#ifndef EPISIS_GRAPH_GEN_HPP
#define EPISIS_GRAPH_GEN_HPP

#include <cstdint>

#include "episis/graph.hpp"

namespace episis::gen {

Graph complete(int n);
Graph star(int leaves);
Graph cycle(int n);
Graph path(int n);

/// Undirected Erdos-Renyi G(n, p), deterministic in seed.
Graph gnp(int n, double p, std::uint64_t seed);

} // namespace episis::gen

#endif
