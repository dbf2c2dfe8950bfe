// Compares the OpenMP kernels against their serial reference implementations:
// wall time for each, plus a bit-level equality check of the results.
#include "subdiffcq/harness.hpp"

#include <chrono>
#include <cstdio>
#include <functional>

using namespace subdiffcq;

namespace {

double timed(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name,
                serial_s, parallel_s, serial_s / parallel_s,
                identical ? "bit-identical" : "RESULTS DIFFER");
}

} // namespace

int main() {
    prec::set_working_bits(256);

    // Smoothed source table: per-node quadratures are independent.
    SourceSpec spec;
    spec.mode = KernelMode::Product;
    spec.time_terms.push_back({Real(1), Real(0), [](const Real& s) { return exp(s) + 1; }});
    spec.time_terms.push_back(
        {Real(1), Real(-4) / 10, [](const Real& s) { return exp(s) + 1; }});
    SmoothedTable ts, tp;
    double s1 = timed([&] { ts = build_smoothed_table(spec, 2, 400, Real(1), 64, Exec::Serial); });
    double p1 =
        timed([&] { tp = build_smoothed_table(spec, 2, 400, Real(1), 64, Exec::Parallel); });
    bool same1 = true;
    for (std::size_t n = 0; n < ts.values.size(); ++n)
        if (ts.values[n] != tp.values[n]) same1 = false;
    report("smoothed_table N=400", s1, p1, same1);

    // Time march: the history convolution is parallel across spatial nodes.
    auto op = build_spatial(32);
    Vector v = sample_interior(op, initial_profile);
    Vector q = sample_interior(op, case_b_spatial);
    SchemeConfig cfg;
    cfg.alpha = Real(3) / 10;
    cfg.k = 6;
    cfg.m = 2;
    cfg.N = 400;
    cfg.T = Real(1);
    Trajectory ms, mp;
    IdmBdfkStepper serial(cfg, op.A_interior, Exec::Serial);
    IdmBdfkStepper parallel(cfg, op.A_interior, Exec::Parallel);
    double s2 = timed([&] { ms = serial.march(v, q, ts.values); });
    double p2 = timed([&] { mp = parallel.march(v, q, tp.values); });
    bool same2 = true;
    for (int n = 0; n <= cfg.N; ++n)
        for (std::size_t i = 0; i < v.size(); ++i)
            if (ms.u[n][i] != mp.u[n][i]) same2 = false;
    report("march k=6 N=400", s2, p2, same2);

    // Contour oracle: one resolvent factorization per node.
    auto params = ContourParams::defaults(Real(1));
    Vector cs, cp;
    double s3 = timed([&] {
        cs = contour_solution(cfg.alpha, op.A_interior, v, Real(-4) / 10, q, Real(1), params,
                              Exec::Serial);
    });
    double p3 = timed([&] {
        cp = contour_solution(cfg.alpha, op.A_interior, v, Real(-4) / 10, q, Real(1), params,
                              Exec::Parallel);
    });
    bool same3 = true;
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (cs[i] != cp[i]) same3 = false;
    report("contour M=32", s3, p3, same3);

    return (same1 && same2 && same3) ? 0 : 1;
}
