#include "episis/graph_gen.hpp"

#include <stdexcept>

#include "episis/rng.hpp"

namespace episis::gen {

Graph complete(int n)
{
    if (n < 1)
        throw std::invalid_argument("complete: n must be >= 1");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            arcs.emplace_back(u, v);
    return Graph(n, arcs, /*directed=*/false);
}

Graph star(int leaves)
{
    if (leaves < 1)
        throw std::invalid_argument("star: need at least one leaf");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(leaves);
    for (int v = 1; v <= leaves; ++v)
        arcs.emplace_back(0, v);
    return Graph(leaves + 1, arcs, false);
}

Graph cycle(int n)
{
    if (n < 3)
        throw std::invalid_argument("cycle: n must be >= 3");
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(n);
    for (int v = 0; v < n; ++v)
        arcs.emplace_back(v, (v + 1) % n);
    return Graph(n, arcs, false);
}

Graph path(int n)
{
    if (n < 1)
        throw std::invalid_argument("path: n must be >= 1");
    std::vector<std::pair<int, int>> arcs;
    for (int v = 0; v + 1 < n; ++v)
        arcs.emplace_back(v, v + 1);
    return Graph(n, arcs, false);
}

Graph gnp(int n, double p, std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("gnp: n must be >= 1");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("gnp: p must be in [0,1]");
    std::vector<std::pair<int, int>> arcs;
    std::uint64_t counter = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit_draw(seed, counter++) < p)
                arcs.emplace_back(u, v);
    return Graph(n, arcs, false);
}

} // namespace episis::gen
