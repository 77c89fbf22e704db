#include "rxva/common.hpp"

#include <cmath>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rxva {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

std::string format_number(double v) {
    if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    if (v == 0.0) return "0.00000000000";
    int mag = static_cast<int>(std::floor(std::log10(std::fabs(v))));
    int decimals = 11 - mag;
    if (decimals < 0) decimals = 0;
    std::string s = fmt::format("{:.{}f}", v, decimals);
    if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
        if (s[0] == '-') s.erase(0, 1);
    }
    return s;
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace rxva
