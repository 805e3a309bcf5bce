#ifndef EPISIS_GRAPH_HPP
#define EPISIS_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace episis {

/// Static spreading network. Arcs are stored as per-node in-neighbour
/// lists in CSR layout: in_neighbors(v) = {u : u can infect v}.
/// Immutable after construction; safe for concurrent shared reads.
class Graph {
public:
    Graph() = default;

    /// Build from directed arcs (u -> v). Self-loops are dropped and
    /// counted, duplicates collapsed. Node ids must lie in [0, n).
    Graph(int n, const std::vector<std::pair<int, int>>& arcs, bool directed);

    int n() const { return n_; }
    bool directed() const { return directed_; }

    /// Number of stored directed arcs (an undirected edge counts twice).
    std::int64_t arc_count() const { return static_cast<std::int64_t>(nbr_.size()); }
    std::int64_t undirected_edge_count() const { return arc_count() / 2; }

    std::span<const int> in_neighbors(int v) const
    {
        return {nbr_.data() + off_[v], nbr_.data() + off_[v + 1]};
    }
    int in_degree(int v) const { return static_cast<int>(off_[v + 1] - off_[v]); }

    /// Original file id of dense node index v (identity unless the
    /// loader had to remap sparse labels).
    std::int64_t original_id(int v) const { return original_ids_[v]; }

    int self_loops_dropped() const { return self_loops_dropped_; }
    std::int64_t duplicates_collapsed() const { return duplicates_collapsed_; }

    bool operator==(const Graph& other) const
    {
        return n_ == other.n_ && directed_ == other.directed_ && off_ == other.off_ && nbr_ == other.nbr_;
    }

private:
    friend Graph load_edge_list(std::istream& in, bool directed);

    int n_ = 0;
    bool directed_ = false;
    std::vector<std::int64_t> off_{0};
    std::vector<int> nbr_;
    std::vector<std::int64_t> original_ids_;
    int self_loops_dropped_ = 0;
    std::int64_t duplicates_collapsed_ = 0;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads whitespace-separated integer pairs, one arc per line. Lines
/// beginning with '#' are comments; an optional "n=<count>" header fixes
/// the node count (ids are then used as indices directly, which permits
/// trailing isolated nodes). Without a header, the distinct labels seen
/// are remapped in sorted order onto 0..n-1 and the original labels are
/// retained. Undirected mode symmetrizes.
Graph load_edge_list(std::istream& in, bool directed);
Graph load_edge_list_file(const std::string& path, bool directed);

struct SpectralResult {
    double lambda1 = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct ConvergenceError : std::runtime_error {
    ConvergenceError(const std::string& msg, double estimate, int iterations)
        : std::runtime_error(msg), last_estimate(estimate), iterations(iterations)
    {
    }
    double last_estimate;
    int iterations;
};

/// Dominant eigenvalue of the adjacency operator by power iteration from
/// the all-ones vector. Iterates on A + I internally so bipartite +/-
/// eigenvalue pairs cannot stall the iteration, then subtracts the shift.
/// Succeeds once both the successive-estimate difference and the residual
/// ||Ax - lambda x||_1 / ||x||_1 fall below tol. Deterministic.
SpectralResult largest_eigenvalue(const Graph& g, double tol = 1e-10, int max_iter = 200000);

} // namespace episis

#endif
