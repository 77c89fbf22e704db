#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rxva {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad or missing configuration fields.
struct ConfigError : Error {
    using Error::Error;
};

// Malformed or inconsistent market / portfolio data.
struct DataError : Error {
    using Error::Error;
};

// Solver failures: non-convergence, boundary solutions where an interior one is needed.
struct NumericalError : Error {
    using Error::Error;
};

enum class Exec { serial, parallel };

// Fixed-shape pairwise summation. The result depends only on the input values,
// never on thread count, so serial and parallel callers agree bitwise.
double pairwise_sum(std::span<const double> v);

inline double mean_of(std::span<const double> v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

// Fixed-format decimal with 12 significant digits.
std::string format_number(double v);

int max_threads();

// Runs f(i) for i in [0, n). The parallel branch uses a static OpenMP schedule; f must not throw.
template <class F>
void for_each_index(std::size_t n, Exec exec, F&& f) {
    auto m = static_cast<std::ptrdiff_t>(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < m; ++i) f(static_cast<std::size_t>(i));
    }
}

}  // namespace rxva
