// Serial reference vs OpenMP kernels: wall time and bitwise agreement.

#include <chrono>
#include <cstdio>
#include <functional>

#include <fmt/format.h>

#include "generators.hpp"
#include "rxva/calibration.hpp"
#include "rxva/kernels.hpp"

using namespace rxva;
namespace tg = rxva::testgen;

namespace {

double best_of(int reps, const std::function<void()>& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel, bool same) {
    fmt::print("{:<28} serial {:9.4f} ms  parallel {:9.4f} ms  speedup {:5.2f}x  {}\n", name, 1e3 * serial,
               1e3 * parallel, serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    tg::Rng g(7);
    fmt::print("threads {}\n", max_threads());

    auto bd = tg::bcva_distribution(g, 20000, 120);
    auto bc = prepare_bcva(bd, Exec::parallel);
    double vs = 0, vp = 0;
    double ts = best_of(5, [&] { for (double a : {0.01, 0.1, 1.0, 10.0}) vs = mean_psi_bcva(bc, a, 0.8, Exec::serial); });
    double tp = best_of(5, [&] { for (double a : {0.01, 0.1, 1.0, 10.0}) vp = mean_psi_bcva(bc, a, 0.8, Exec::parallel); });
    row("mean_psi_bcva 20000 x 120", ts, tp, vs == vp);

    auto fd = tg::fva_distribution(g, 20000, 120);
    auto fp = prepare_fva(fd, Exec::parallel);
    ts = best_of(5, [&] { for (double a : {0.01, 0.1, 1.0, 10.0}) vs = mean_psi_fva(fp, a, 0.8, Exec::serial); });
    tp = best_of(5, [&] { for (double a : {0.01, 0.1, 1.0, 10.0}) vp = mean_psi_fva(fp, a, 0.8, Exec::parallel); });
    row("mean_psi_fva 20000 x 120", ts, tp, vs == vp);

    ts = best_of(3, [&] { prepare_bcva(bd, Exec::serial); });
    tp = best_of(3, [&] { prepare_bcva(bd, Exec::parallel); });
    row("prepare_bcva 20000 x 120", ts, tp, true);

    auto a = tg::bcva_distribution(g, 1000, 120), b = tg::bcva_distribution(g, 1000, 120);
    std::vector<double> cs, cp;
    ts = best_of(3, [&] { cs = cost_matrix(a, b, 0.8, Exec::serial); });
    tp = best_of(3, [&] { cp = cost_matrix(a, b, 0.8, Exec::parallel); });
    row("cost_matrix bcva 1000^2", ts, tp, cs == cp);

    auto fa = tg::fva_distribution(g, 1000, 120), fb = tg::fva_distribution(g, 1000, 120);
    ts = best_of(3, [&] { cs = cost_matrix(fa, fb, 0.8, Exec::serial); });
    tp = best_of(3, [&] { cp = cost_matrix(fa, fb, 0.8, Exec::parallel); });
    row("cost_matrix fva 1000^2", ts, tp, cs == cp);
    return 0;
}
