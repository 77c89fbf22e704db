#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rxva/calibration.hpp"
#include "rxva/date_grid.hpp"
#include "rxva/metrics.hpp"

namespace rxva {

enum class Mode { bcva, ucva, udva, fva, fca, fba };

Mode parse_mode(const std::string& s);
std::string mode_name(Mode m);
inline bool is_funding(Mode m) { return m == Mode::fva || m == Mode::fca || m == Mode::fba; }

// Where a default curve comes from: a flat spread, one of the CDS index quotes, or the HY term curve.
struct CreditSource {
    enum class Kind { flat, cds_ig, cds_hy, hy_curve } kind = Kind::flat;
    double spread_bp = 100.0;
};

enum class RadiusSource { two_snapshots, two_seeds };

struct PipelineConfig {
    Mode mode = Mode::bcva;
    std::string valuation_date = "2020-04-20";
    std::filesystem::path snapshot;
    std::filesystem::path second_snapshot;  // empty unless radius_source is two_snapshots
    std::filesystem::path portfolio;
    int step_months = 3;
    double horizon_years = 30.0;
    std::size_t n_paths = 1000;
    std::uint64_t seed = 20200420;
    std::uint64_t second_seed = 20200320;
    double mean_reversion = 0.03;
    CreditSource counterparty{CreditSource::Kind::flat, 150.0};
    CreditSource firm{CreditSource::Kind::flat, 100.0};
    double recovery_counterparty = 0.4;
    double recovery_firm = 0.4;
    std::string funding_curve = "ig";  // ig | hy
    double funding_vol0 = 0.85;
    double funding_vol10 = 0.31;
    double pfe_quantile = 0.95;
    std::vector<double> delta_percents{50, 60, 70, 80, 90, 100};
    std::optional<double> s3_override;
    S3Mode s3_mode = S3Mode::pairwise_max;
    RadiusSource radius_source = RadiusSource::two_snapshots;
    std::size_t matching_cap = 1000;
    double notional_unit = 1.0;
    int threads = 0;  // 0: OpenMP default
    std::filesystem::path output_dir = "out";
    bool dump_samples = false;
};

// Relative paths resolve against base_dir. A manifest is accepted too: its "config" member is used.
PipelineConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);
PipelineConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const PipelineConfig& c);

struct RobustPoint {
    double percent;
    double delta;
    double alpha;
    double value;
    bool boundary;
    std::string note;
};

struct WorstCaseRow {
    std::size_t source;
    double weight;
    int index1;  // BCVA: counterparty default index; FVA: survival block length
    int index2;  // BCVA: firm default index; FVA: unused (-1)
    double payoff;
    std::vector<double> exposure;
};

struct PipelineResult {
    PipelineConfig config;
    std::size_t n = 0;  // observation dates after t_0
    std::vector<std::string> dates;
    std::vector<double> times;
    // CVA / DVA / BCVA or FCA / FBA / FVA, in that order.
    std::vector<std::pair<std::string, double>> baselines;
    double baseline = 0.0;  // the one matching the mode
    double s3 = 0.0;
    bool s3_overridden = false;
    RadiusBounds bounds;
    std::size_t matched = 0;
    std::vector<RobustPoint> robust;
    double hw_rmse = 0.0;
    double hw_rel_rmse = 0.0;
    std::vector<double> hw_sigmas;
    std::vector<double> hw_ends;
    std::size_t ties_resampled = 0;
    std::size_t ties_left = 0;
    // Profiles of V+ and |V-| (BCVA modes, dates t_0..t_n) or Z+ and |Z-| (funding modes, t_1..t_n).
    ExposureProfile positive_profile;
    ExposureProfile negative_profile;
    double worst_case_delta = 0.0;
    double worst_case_cost = 0.0;
    double worst_case_payoff = 0.0;
    std::vector<WorstCaseRow> worst_case;
    std::string worst_case_note;
    // Optional sample dump: path id, exposure row, default / survival indices.
    std::vector<WorstCaseRow> samples;
};

// Simulate, calibrate, value and stress. Throws ConfigError, DataError or NumericalError.
PipelineResult run_pipeline(const PipelineConfig& config);

// Writes the bundle into a staging directory next to dir and renames it into place.
void write_bundle(const PipelineResult& r, const std::filesystem::path& dir);

}  // namespace rxva
