// Serial vs OpenMP timing of the degree-slice homology scans.
#include "krh/invariants.hpp"

#include <chrono>
#include <cstdio>

using namespace krh;

namespace {

template <typename F>
double time_of(F&& f) {
    auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_double(const char* label, const char* braid, int q_hi) {
    auto d = close_braid(BraidWord::parse(braid));
    AssembleOptions opt;
    opt.variant = Variant::reduced_edge;
    opt.marked_edge = 1;
    auto ac = assemble(d, param_x_pow(3), opt);
    TripleGradedDims ds, dp;
    double ts = time_of([&] {
        DoubleHomologyEngine e(ac.complex, q_hi, Exec::serial);
        ds = e.dims(q_hi - 2);
    });
    double tp = time_of([&] {
        DoubleHomologyEngine e(ac.complex, q_hi, Exec::parallel);
        dp = e.dims(q_hi - 2);
    });
    std::printf("%-28s serial %7.2fs   openmp %7.2fs   speedup %.2fx   %s\n", label, ts, tp,
                ts / tp, ds == dp ? "(equal)" : "(MISMATCH)");
}

void bench_total(const char* label, const char* braid, int n, int q_hi) {
    auto d = close_braid(BraidWord::parse(braid));
    AssembleOptions opt;
    opt.variant = Variant::reduced_edge;
    opt.marked_edge = 1;
    auto ac = assemble(d, param_x_pow(n + 1), opt);
    BigradedDims ds, dp;
    double ts = time_of([&] {
        TotalHomologyEngine e(ac.complex, n, q_hi, Exec::serial);
        ds = e.dims();
    });
    double tp = time_of([&] {
        TotalHomologyEngine e(ac.complex, n, q_hi, Exec::parallel);
        dp = e.dims();
    });
    std::printf("%-28s serial %7.2fs   openmp %7.2fs   speedup %.2fx   %s\n", label, ts, tp,
                ts / tp, ds == dp ? "(equal)" : "(MISMATCH)");
}

} // namespace

int main() {
    std::printf("slice-scan benchmarks (identical results required)\n");
    bench_double("homfly slices: trefoil", "b=2; w=1 1 1", 24);
    bench_double("homfly slices: figure-8", "b=3; w=1 -2 1 -2", 18);
    bench_double("homfly slices: 5_1", "b=2; w=1 1 1 1 1", 22);
    bench_total("sl(2) slices: trefoil", "b=2; w=1 1 1", 2, 26);
    bench_total("sl(3) slices: figure-8", "b=3; w=1 -2 1 -2", 3, 24);
    return 0;
}
