// Benchmark of the OpenMP kernels against the serial reference: exact
// column elimination and sparse products on Hochschild differentials.

#include "chom/bicomplex.hpp"
#include "chom/hochschild.hpp"

#include <cstdio>
#include <cstdlib>
#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace chom;

namespace {

double seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

struct Case {
    const char* name;
    SparseMatrix m;
};

double time_echelon(const SparseMatrix& m, Exec mode, int reps, int* rank) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = seconds();
        Echelon e(m, true, mode);
        best = std::min(best, seconds() - t0);
        *rank = e.rank();
    }
    return best;
}

double time_mul(const SparseMatrix& a, const SparseMatrix& b, Exec mode, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = seconds();
        SparseMatrix c = mul(a, b, mode);
        best = std::min(best, seconds() - t0);
        if (c.rows() == -1)
            std::abort();
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int D = argc > 1 ? std::atoi(argv[1]) : 6;
    int reps = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (compiled without OpenMP)\n");
#endif

    auto [a3, s3] = truncated_polynomial(3);
    (void)s3;
    HochschildModule h = hh(a3, D);
    CyclicHomology eng(h.mod);
    const auto& cc = eng.cc();

    std::vector<Case> cases;
    cases.push_back({"moore b_D", eng.moore().d[D]});
    cases.push_back({"cc total d_D", cc.chain.d[cc.index_of(D)]});

    std::printf("%-14s %10s %10s %12s %12s %8s\n", "case", "rows", "cols", "serial[s]",
                "openmp[s]", "speedup");
    for (const auto& c : cases) {
        int rank_s = 0, rank_p = 0;
        double ts = time_echelon(c.m, Exec::Serial, reps, &rank_s);
        double tp = time_echelon(c.m, Exec::Parallel, reps, &rank_p);
        if (rank_s != rank_p) {
            std::printf("rank mismatch on %s\n", c.name);
            return 1;
        }
        std::printf("%-14s %10d %10d %12.4f %12.4f %8.2f\n", c.name, c.m.rows(), c.m.cols(),
                    ts, tp, ts / tp);
    }
    {
        const SparseMatrix& a = eng.moore().d[D - 1];
        const SparseMatrix& b = eng.moore().d[D];
        double ts = time_mul(a, b, Exec::Serial, reps);
        double tp = time_mul(a, b, Exec::Parallel, reps);
        std::printf("%-14s %10d %10d %12.4f %12.4f %8.2f\n", "moore product", a.rows(),
                    b.cols(), ts, tp, ts / tp);
    }
    return 0;
}
