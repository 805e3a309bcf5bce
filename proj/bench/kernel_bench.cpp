// Times the OpenMP kernels against their serial reference twins and
// checks that both produce identical bytes while at it.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "episis/graph.hpp"
#include "episis/graph_gen.hpp"
#include "episis/kernels.hpp"

using namespace episis;

namespace {

double time_loop(int reps, const std::function<void()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

} // namespace

int main()
{
#ifdef _OPENMP
    std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
    std::printf("openmp: not enabled\n");
#endif
    std::printf("%-8s %-16s %12s %12s %9s %7s\n", "n", "kernel", "parallel(us)", "serial(us)",
                "speedup", "equal");

    for (int n : {1000, 4000, 16000}) {
        Graph g = gen::gnp(n, 20.0 / n, 7);
        std::vector<double> infect(n), beta(n), out_p(n), out_s(n);
        for (int v = 0; v < n; ++v) {
            infect[v] = 0.5 * (1.0 + std::sin(0.1 * v));
            beta[v] = 0.2 + 0.3 * (v % 7) / 7.0;
        }
        const double gamma = 0.05;
        const int reps = n <= 4000 ? 200 : 50;

        struct Row {
            const char* name;
            std::function<void()> par;
            std::function<void()> ser;
        };
        std::vector<double> w(n, 1e-3);
        const Row rows[] = {
            {"pressure", [&] { kernels::pressure(g, infect, gamma, out_p); },
             [&] { kernels::pressure_serial(g, infect, gamma, out_s); }},
            {"master_deriv",
             [&] { kernels::master_deriv(g, infect, beta, gamma, w.data(), out_p); },
             [&] { kernels::master_deriv_serial(g, infect, beta, gamma, w.data(), out_s); }},
            {"linear_deriv", [&] { kernels::linear_deriv(g, infect, beta, gamma, out_p); },
             [&] { kernels::linear_deriv_serial(g, infect, beta, gamma, out_s); }},
            {"adjacency_matvec", [&] { kernels::adjacency_matvec(g, infect, out_p); },
             [&] { kernels::adjacency_matvec_serial(g, infect, out_s); }},
        };

        for (const Row& row : rows) {
            double tp = time_loop(reps, row.par);
            double ts = time_loop(reps, row.ser);
            row.par();
            row.ser();
            bool equal = std::memcmp(out_p.data(), out_s.data(), n * sizeof(double)) == 0;
            std::printf("%-8d %-16s %12.2f %12.2f %8.2fx %7s\n", n, row.name, tp * 1e6, ts * 1e6,
                        ts / tp, equal ? "yes" : "NO");
            if (!equal) return 1;
        }
    }
    return 0;
}
