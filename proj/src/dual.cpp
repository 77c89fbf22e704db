#include "rxva/dual.hpp"

#include <algorithm>
#include <cmath>

namespace rxva {

LineMinimum golden_log_minimize(const std::function<double(double)>& F, const DualOptions& opt,
                                std::vector<TracePoint>& trace) {
    const double lo = std::log(opt.alpha_min), hi = std::log(opt.alpha_max);
    auto eval = [&](double s) {
        s = std::clamp(s, lo, hi);
        double a = std::exp(s);
        double v = F(a);
        trace.push_back({a, v});
        return v;
    };

    // Bracket: (a, b, c) in log alpha with f(b) <= f(a) and f(b) < f(c), or a cap reached.
    double s0 = std::clamp(0.0, lo, hi);
    double step = 1.0;
    double b = s0, fb = eval(b);
    double c = std::min(b + step, hi), fc = eval(c);
    double dir = 1.0;
    if (fc > fb) {
        dir = -1.0;
        c = std::max(b - step, lo);
        fc = eval(c);
    }
    double a = b, fa = fb;
    if (fc > fb) {
        // Minimum between b - step and b + step.
        a = std::max(b - step, lo);
        c = std::min(b + step, hi);
    } else {
        a = b;
        fa = fb;
        b = c;
        fb = fc;
        for (;;) {
            double cap = dir > 0 ? hi : lo;
            if (b == cap) {
                c = b;
                break;
            }
            step *= 1.618034;
            c = dir > 0 ? std::min(b + step, hi) : std::max(b - step, lo);
            fc = eval(c);
            if (fc > fb) break;
            a = b;
            fa = fb;
            b = c;
            fb = fc;
        }
    }
    (void)fa;
    double left = std::min(a, c), right = std::max(a, c);

    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = right - invphi * (right - left), x2 = left + invphi * (right - left);
    double f1 = eval(x1), f2 = eval(x2);
    while (right - left > opt.golden_tol) {
        if (f1 <= f2) {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - invphi * (right - left);
            f1 = eval(x1);
        } else {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + invphi * (right - left);
            f2 = eval(x2);
        }
    }
    eval(hi);

    auto best = std::min_element(trace.begin(), trace.end(), [](const TracePoint& p, const TracePoint& q) {
        return p.value < q.value || (p.value == q.value && p.alpha > q.alpha);
    });
    LineMinimum out{best->alpha, best->value, false, false};
    out.at_upper_cap = best->alpha >= opt.alpha_max * (1 - 1e-6);
    out.at_lower_cap = best->alpha <= opt.alpha_min * (1 + 1e-6);
    return out;
}

}  // namespace rxva
