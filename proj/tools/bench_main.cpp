// Benchmarks the parallel kernels against their serial references:
// line-graph construction, incidence-matrix rank, and starter completion.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spreads/classify.hpp"
#include "spreads/collineation.hpp"
#include "spreads/pipeline.hpp"
#include "spreads/plane.hpp"
#include "spreads/spreadset.hpp"

using namespace spreads;

namespace {

double seconds(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

// Pairwise rank-test reference for the line graph (the pencil-stamping builder
// is the production path).
BitMatrix gamma_reference(const Geometry& g) {
    BitMatrix m(g.n_lines, g.n_lines);
    for (int a = 0; a < g.n_lines; ++a)
        for (int b = a + 1; b < g.n_lines; ++b)
            if (g.lines_meet(a, b)) {
                m.set(a, b);
                m.set(b, a);
            }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    int q = argc > 1 ? std::stoi(argv[1]) : 4;
    auto pe = q == 4 ? std::pair{2, 2} : q == 8 ? std::pair{2, 3} : q == 9 ? std::pair{3, 2}
                                                                           : std::pair{q, 1};
    const Field& f = Field::get(pe.first, pe.second);
#ifdef _OPENMP
    printf("threads: %d\n", omp_get_max_threads());
#else
    printf("threads: 1 (OpenMP disabled)\n");
#endif
    printf("%-34s %10s\n", "kernel", "seconds");

    Geometry g = build_geometry(f);
    double t_gamma_ref = seconds([&] {
        BitMatrix ref = gamma_reference(g);
        if (!(ref == g.gamma)) {
            printf("gamma reference MISMATCH\n");
            exit(1);
        }
    });
    double t_gamma = seconds([&] { Geometry g2 = build_geometry(f); });
    printf("%-34s %10.3f\n", "gamma pencil build (parallel)", t_gamma);
    printf("%-34s %10.3f\n", "gamma pairwise reference (serial)", t_gamma_ref);

    Spread reg = regular_spread(g);
    TranslationPlane pl = build_plane(g, reg);
    int r1 = 0, r2 = 0;
    double t_rank_par = seconds([&] { r1 = p_rank(pl, f.p()); });
    double t_rank_ser = seconds([&] { r2 = p_rank_serial(pl, f.p()); });
    if (r1 != r2) {
        printf("rank MISMATCH: %d vs %d\n", r1, r2);
        return 1;
    }
    printf("%-34s %10.3f   (rank %d)\n", "plane rank (parallel)", t_rank_par, r1);
    printf("%-34s %10.3f\n", "plane rank (serial reference)", t_rank_ser);

    if (q <= 4) {
        GroupPair groups = build_groups(g);
        std::vector<Starter> starters = enumerate_starters(g, groups.ext);
        uint64_t n1 = 0, n2 = 0;
        double t_par = seconds([&] {
            std::vector<uint64_t> counts(starters.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
            for (int i = 0; i < (int)starters.size(); ++i) {
                ExactCoverInstance inst = build_instance(g, starters[i]);
                counts[i] = exact_cover_solve(inst, [](const std::vector<uint32_t>&) {});
            }
            for (uint64_t c : counts) n1 += c;
        });
        double t_ser = seconds([&] {
            for (const Starter& s : starters) {
                ExactCoverInstance inst = build_instance(g, s);
                n2 += exact_cover_solve(inst, [](const std::vector<uint32_t>&) {});
            }
        });
        if (n1 != n2) {
            printf("completion count MISMATCH\n");
            return 1;
        }
        printf("%-34s %10.3f   (%llu solutions)\n", "starter completion (parallel)", t_par,
               (unsigned long long)n1);
        printf("%-34s %10.3f\n", "starter completion (serial)", t_ser);
    }
    return 0;
}
