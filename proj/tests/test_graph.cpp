#include <doctest.h>

#include <cmath>
#include <sstream>

#include "episis/graph.hpp"
#include "episis/graph_gen.hpp"
#include "episis/rng.hpp"
#include "oracles.hpp"

using namespace episis;

TEST_CASE("edge list: undirected path")
{
    std::istringstream in("0 1\n1 2");
    Graph g = load_edge_list(in, false);
    CHECK(g.n() == 3);
    CHECK(g.arc_count() == 4);
    CHECK(g.in_degree(1) == 2);
    CHECK(g.in_degree(0) == 1);
    CHECK(g.in_neighbors(0)[0] == 1);
}

TEST_CASE("edge list: self-loop dropped with count")
{
    std::istringstream in("0 0\n0 1");
    Graph g = load_edge_list(in, false);
    CHECK(g.n() == 2);
    CHECK(g.arc_count() == 2);
    CHECK(g.self_loops_dropped() == 1);
}

TEST_CASE("edge list: duplicates collapsed")
{
    std::istringstream in("0 1\n0 1\n1 0");
    Graph g = load_edge_list(in, false);
    CHECK(g.n() == 2);
    CHECK(g.arc_count() == 2);
    CHECK(g.duplicates_collapsed() > 0);
}

TEST_CASE("edge list: comments and malformed lines")
{
    std::istringstream ok("# header comment\n0 1\n# mid comment\n1 2\n");
    CHECK(load_edge_list(ok, false).n() == 3);

    std::istringstream bad("0 1\nnot an edge\n");
    CHECK_THROWS_WITH_AS(load_edge_list(bad, false), doctest::Contains("line 2"), ParseError);

    std::istringstream empty("");
    CHECK_THROWS_AS(load_edge_list(empty, false), ParseError);

    std::istringstream trailing("0 1 2\n");
    CHECK_THROWS_AS(load_edge_list(trailing, false), ParseError);
}

TEST_CASE("edge list: sparse labels remapped densely, original ids kept")
{
    std::istringstream in("5 9\n9 12");
    Graph g = load_edge_list(in, false);
    CHECK(g.n() == 3);
    CHECK(g.original_id(0) == 5);
    CHECK(g.original_id(1) == 9);
    CHECK(g.original_id(2) == 12);
    CHECK(g.in_degree(1) == 2);
}

TEST_CASE("edge list: n= header allows isolated trailing nodes")
{
    std::istringstream in("n=5\n0 1\n");
    Graph g = load_edge_list(in, false);
    CHECK(g.n() == 5);
    CHECK(g.in_degree(4) == 0);
    CHECK(g.original_id(4) == 4);
}

TEST_CASE("edge list: directed arcs stay one-way")
{
    std::istringstream in("0 1\n");
    Graph g = load_edge_list(in, true);
    CHECK(g.directed());
    CHECK(g.in_degree(1) == 1);
    CHECK(g.in_degree(0) == 0);
}

TEST_CASE("edge list: loading twice gives identical graphs")
{
    const char* text = "0 3\n3 1\n1 2\n2 0\n";
    std::istringstream a(text), b(text);
    CHECK(load_edge_list(a, false) == load_edge_list(b, false));
}

TEST_CASE("largest_eigenvalue: closed forms")
{
    for (int n = 3; n <= 20; ++n) {
        CHECK(std::abs(largest_eigenvalue(gen::complete(n)).lambda1 - (n - 1)) <= 1e-9);
        CHECK(std::abs(largest_eigenvalue(gen::cycle(n)).lambda1 - 2.0) <= 1e-9);
    }
    CHECK(std::abs(largest_eigenvalue(gen::star(9)).lambda1 - 3.0) <= 1e-9);
    // two nodes, one edge: bipartite pair +/-1; the shift keeps it moving
    CHECK(std::abs(largest_eigenvalue(gen::path(2)).lambda1 - 1.0) <= 1e-9);
}

TEST_CASE("largest_eigenvalue: dense oracle agreement on random graphs")
{
    for (int k = 0; k < 8; ++k) {
        int n = 10 + 5 * k;
        double p = 0.08 + 0.04 * (k % 4);
        Graph g = gen::gnp(n, p, 100 + k);
        double ours = largest_eigenvalue(g).lambda1;
        double ref = oracle::jacobi_lambda_max(oracle::dense_adjacency(g));
        CHECK(std::abs(ours - ref) <= 1e-8);
    }
}

TEST_CASE("largest_eigenvalue: residual reported and convergence enforced")
{
    SpectralResult r = largest_eigenvalue(gen::gnp(40, 0.15, 7), 1e-10);
    CHECK(r.residual <= 1e-10 * r.lambda1 + 1e-12);
    CHECK(r.iterations > 0);

    CHECK_THROWS_AS(largest_eigenvalue(gen::gnp(40, 0.15, 7), 1e-13, 2), ConvergenceError);
    try {
        largest_eigenvalue(gen::gnp(40, 0.15, 7), 1e-13, 2);
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations == 2);
        CHECK(std::isfinite(e.last_estimate));
    }
}

TEST_CASE("generators: shapes")
{
    Graph k4 = gen::complete(4);
    CHECK(k4.n() == 4);
    CHECK(k4.arc_count() == 12);

    Graph s = gen::star(9);
    CHECK(s.n() == 10);
    CHECK(s.in_degree(0) == 9);
    CHECK(s.in_degree(1) == 1);

    Graph c = gen::cycle(5);
    for (int v = 0; v < 5; ++v) CHECK(c.in_degree(v) == 2);

    Graph p = gen::path(4);
    CHECK(p.arc_count() == 6);

    Graph r1 = gen::gnp(30, 0.2, 42);
    Graph r2 = gen::gnp(30, 0.2, 42);
    CHECK(r1 == r2);
    Graph r3 = gen::gnp(30, 0.2, 43);
    CHECK_FALSE(r1 == r3);
}
