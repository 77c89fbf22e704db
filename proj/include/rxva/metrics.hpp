#pragma once

#include <vector>

#include "rxva/common.hpp"

namespace rxva {

struct ExposureProfile {
    std::vector<double> times;
    std::vector<double> ee;
    std::vector<double> pfe;
    std::vector<double> eff_ee;
    double epe = 0.0;
    double eff_epe = 0.0;
    double max_pfe = 0.0;
    double sum_pfe = 0.0;  // sum of PFE over dates; the integrated PFE when values already carry accrual
};

// Profiles of a paths x dates row-major matrix. PFE is the lower empirical quantile
// inf{x : q <= F(x)}, i.e. the ceil(q N)-th smallest value. EPE and EffEPE are trapezoidal
// time averages over [times.front(), times.back()].
ExposureProfile exposure_profiles(const std::vector<double>& values, std::size_t n_paths,
                                  const std::vector<double>& times, double q, Exec exec = Exec::parallel);

double lower_quantile(std::vector<double> column, double q);

}  // namespace rxva
