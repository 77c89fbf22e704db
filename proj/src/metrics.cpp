#include "rxva/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace rxva {

double lower_quantile(std::vector<double> column, double q) {
    if (column.empty()) throw DataError("quantile of an empty column");
    if (!(q > 0 && q < 1)) throw ConfigError("PFE quantile must lie in (0, 1)");
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(column.size())));
    rank = std::clamp<std::size_t>(rank, 1, column.size());
    std::nth_element(column.begin(), column.begin() + static_cast<std::ptrdiff_t>(rank - 1), column.end());
    return column[rank - 1];
}

namespace {

double trapezoid_average(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() == 1) return y[0];
    double area = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) area += 0.5 * (y[k] + y[k - 1]) * (t[k] - t[k - 1]);
    return area / (t.back() - t.front());
}

}  // namespace

ExposureProfile exposure_profiles(const std::vector<double>& values, std::size_t n_paths,
                                  const std::vector<double>& times, double q, Exec exec) {
    if (n_paths == 0 || times.empty()) throw DataError("exposure profile of an empty cube");
    std::size_t nd = times.size();
    if (values.size() != n_paths * nd) throw DataError("exposure cube shape does not match its dates");
    if (!(q > 0 && q < 1)) throw ConfigError("PFE quantile must lie in (0, 1)");
    ExposureProfile p;
    p.times = times;
    p.ee.assign(nd, 0.0);
    p.pfe.assign(nd, 0.0);
    for_each_index(nd, exec, [&](std::size_t k) {
        std::vector<double> col(n_paths);
        for (std::size_t i = 0; i < n_paths; ++i) col[i] = values[i * nd + k];
        p.ee[k] = mean_of(col);
        p.pfe[k] = lower_quantile(std::move(col), q);
    });
    p.eff_ee.resize(nd);
    double run = -INFINITY;
    for (std::size_t k = 0; k < nd; ++k) {
        run = std::max(run, p.ee[k]);
        p.eff_ee[k] = run;
    }
    p.epe = trapezoid_average(times, p.ee);
    p.eff_epe = trapezoid_average(times, p.eff_ee);
    p.max_pfe = *std::max_element(p.pfe.begin(), p.pfe.end());
    p.sum_pfe = 0.0;
    for (double v : p.pfe) p.sum_pfe += v;
    return p;
}

}  // namespace rxva
