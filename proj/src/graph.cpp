#include "episis/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "episis/kernels.hpp"
#include "episis/log.hpp"

namespace episis {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& arcs, bool directed)
    : n_(n), directed_(directed)
{
    if (n < 0)
        throw std::invalid_argument("graph: negative node count");
    std::vector<std::pair<int, int>> work; // (target, source) so sort groups by target
    work.reserve(arcs.size() * (directed ? 1 : 2));
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: node index out of range");
        if (u == v) {
            ++self_loops_dropped_;
            continue;
        }
        work.emplace_back(v, u);
        if (!directed)
            work.emplace_back(u, v);
    }
    std::sort(work.begin(), work.end());
    auto last = std::unique(work.begin(), work.end());
    duplicates_collapsed_ = static_cast<std::int64_t>(work.end() - last);
    if (!directed)
        duplicates_collapsed_ /= 2;
    work.erase(last, work.end());

    off_.assign(static_cast<std::size_t>(n) + 1, 0);
    nbr_.resize(work.size());
    for (std::size_t k = 0; k < work.size(); ++k) {
        off_[static_cast<std::size_t>(work[k].first) + 1]++;
        nbr_[k] = work[k].second;
    }
    for (int v = 0; v < n; ++v)
        off_[v + 1] += off_[v];

    original_ids_.resize(n);
    for (int v = 0; v < n; ++v)
        original_ids_[v] = v;
}

namespace {

bool blank_or_comment(const std::string& line)
{
    for (char c : line) {
        if (c == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

} // namespace

Graph load_edge_list(std::istream& in, bool directed)
{
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    std::int64_t header_n = -1;
    std::string line;
    int lineno = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank_or_comment(line))
            continue;
        // Optional one-line header "n=<count>".
        auto eq = line.find('=');
        if (eq != std::string::npos) {
            std::string key = line.substr(0, eq);
            key.erase(std::remove_if(key.begin(), key.end(),
                                     [](unsigned char c) { return std::isspace(c); }),
                      key.end());
            if (key != "n")
                throw ParseError("edge list line " + std::to_string(lineno) + ": unknown header '" + key + "'");
            if (saw_data || header_n >= 0)
                throw ParseError("edge list line " + std::to_string(lineno) + ": header must appear once, before any edge");
            std::istringstream hv(line.substr(eq + 1));
            if (!(hv >> header_n) || header_n < 0)
                throw ParseError("edge list line " + std::to_string(lineno) + ": bad node count");
            continue;
        }
        std::istringstream ls(line);
        std::int64_t u, v;
        if (!(ls >> u >> v))
            throw ParseError("edge list line " + std::to_string(lineno) + ": expected two integers");
        std::string trailing;
        if (ls >> trailing)
            throw ParseError("edge list line " + std::to_string(lineno) + ": trailing token '" + trailing + "'");
        if (u < 0 || v < 0)
            throw ParseError("edge list line " + std::to_string(lineno) + ": negative node id");
        raw.emplace_back(u, v);
        saw_data = true;
    }
    if (raw.empty())
        throw ParseError("edge list: no edges found");

    std::vector<std::int64_t> ids;
    std::vector<std::pair<int, int>> arcs;
    arcs.reserve(raw.size());
    int n;
    if (header_n >= 0) {
        n = static_cast<int>(header_n);
        for (auto [u, v] : raw) {
            if (u >= header_n || v >= header_n)
                throw ParseError("edge list: node id exceeds declared n=" + std::to_string(header_n));
            arcs.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        ids.resize(n);
        for (int v = 0; v < n; ++v)
            ids[v] = v;
    } else {
        // Dense remap of the labels seen, in sorted order (identity for
        // already 0-based contiguous inputs such as generated graphs).
        ids.reserve(raw.size() * 2);
        for (auto [u, v] : raw) {
            ids.push_back(u);
            ids.push_back(v);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        n = static_cast<int>(ids.size());
        auto index_of = [&ids](std::int64_t id) {
            return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
        };
        for (auto [u, v] : raw)
            arcs.emplace_back(index_of(u), index_of(v));
    }

    Graph g(n, arcs, directed);
    g.original_ids_ = std::move(ids);
    if (g.self_loops_dropped() > 0)
        log::warn("edge list: dropped " + std::to_string(g.self_loops_dropped()) + " self-loop(s)");
    return g;
}

Graph load_edge_list_file(const std::string& path, bool directed)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open edge list '" + path + "'");
    return load_edge_list(in, directed);
}

SpectralResult largest_eigenvalue(const Graph& g, double tol, int max_iter)
{
    if (g.n() == 0)
        throw std::invalid_argument("largest_eigenvalue: empty graph");
    if (!(tol > 0))
        throw std::invalid_argument("largest_eigenvalue: tol must be positive");

    const int n = g.n();
    const double shift = 1.0; // iterate on A + I; exact for the reported eigenvalue
    std::vector<double> x(n, 1.0 / n), y(n);

    double estimate = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= max_iter; ++iter) {
        kernels::adjacency_matvec(g, x, y);
        double norm = 0.0;
        for (int v = 0; v < n; ++v) {
            y[v] += shift * x[v];
            norm += y[v];
        }
        // x >= 0 with ||x||_1 = 1, so ||(A+I)x||_1 is the Perron estimate.
        estimate = norm - shift;
        for (int v = 0; v < n; ++v)
            y[v] /= norm;
        x.swap(y);

        if (std::abs(estimate - prev) <= tol) {
            kernels::adjacency_matvec(g, x, y);
            double res = 0.0;
            for (int v = 0; v < n; ++v)
                res += std::abs(y[v] - estimate * x[v]);
            if (res <= tol)
                return SpectralResult{estimate, iter, res};
        }
        prev = estimate;
    }
    throw ConvergenceError("largest_eigenvalue: no convergence within " + std::to_string(max_iter) +
                               " iterations (last estimate " + std::to_string(estimate) + ")",
                           estimate, max_iter);
}

} // namespace episis
