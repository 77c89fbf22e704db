#include "rxva/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rxva/curves.hpp"
#include "rxva/empirical.hpp"
#include "rxva/hull_white.hpp"
#include "rxva/market_data.hpp"
#include "rxva/robust_bcva.hpp"
#include "rxva/robust_fva.hpp"
#include "rxva/rng.hpp"
#include "rxva/scenario.hpp"

namespace rxva {

using nlohmann::json;

Mode parse_mode(const std::string& s) {
    if (s == "bcva") return Mode::bcva;
    if (s == "ucva") return Mode::ucva;
    if (s == "udva") return Mode::udva;
    if (s == "fva") return Mode::fva;
    if (s == "fca") return Mode::fca;
    if (s == "fba") return Mode::fba;
    throw ConfigError(fmt::format("mode: expected bcva, ucva, udva, fva, fca or fba, got '{}'", s));
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::bcva: return "bcva";
        case Mode::ucva: return "ucva";
        case Mode::udva: return "udva";
        case Mode::fva: return "fva";
        case Mode::fca: return "fca";
        case Mode::fba: return "fba";
    }
    return "?";
}

namespace {

// Field access with dotted-path diagnostics and rejection of unknown keys.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(fmt::format("{}: expected an object", where()));
    }

    void allow(std::initializer_list<const char*> keys) const {
        std::set<std::string> ok(keys.begin(), keys.end());
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!ok.count(it.key())) throw ConfigError(fmt::format("{}: unknown field", field(it.key())));
    }

    bool has(const char* key) const { return j_.contains(key) && !j_.at(key).is_null(); }

    Section section(const char* key) const {
        static const json empty = json::object();
        return has(key) ? Section(j_.at(key), field(key)) : Section(empty, field(key));
    }

    template <class T>
    T get(const char* key, T fallback) const {
        if (!has(key)) return fallback;
        try {
            return j_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(fmt::format("{}: wrong type", field(key)));
        }
    }

    template <class T>
    T require(const char* key) const {
        if (!has(key)) throw ConfigError(fmt::format("{}: required field missing", field(key)));
        return get<T>(key, T{});
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

private:
    std::string where() const { return path_.empty() ? "config" : path_; }

    const json& j_;
    std::string path_;
};

CreditSource parse_credit(const Section& s) {
    s.allow({"source", "spread_bp"});
    CreditSource c;
    auto src = s.get<std::string>("source", "flat");
    if (src == "flat") c.kind = CreditSource::Kind::flat;
    else if (src == "cds_ig") c.kind = CreditSource::Kind::cds_ig;
    else if (src == "cds_hy") c.kind = CreditSource::Kind::cds_hy;
    else if (src == "hy_curve") c.kind = CreditSource::Kind::hy_curve;
    else throw ConfigError(fmt::format("{}: expected flat, cds_ig, cds_hy or hy_curve", s.field("source")));
    c.spread_bp = s.get<double>("spread_bp", c.spread_bp);
    if (c.kind == CreditSource::Kind::flat && !(c.spread_bp >= 0))
        throw ConfigError(fmt::format("{}: must be non-negative", s.field("spread_bp")));
    return c;
}

std::string credit_name(const CreditSource& c) {
    switch (c.kind) {
        case CreditSource::Kind::flat: return "flat";
        case CreditSource::Kind::cds_ig: return "cds_ig";
        case CreditSource::Kind::cds_hy: return "cds_hy";
        case CreditSource::Kind::hy_curve: return "hy_curve";
    }
    return "?";
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : (base / q).lexically_normal();
}

}  // namespace

PipelineConfig parse_config(const json& root, const std::filesystem::path& base_dir) {
    const json& j = root.is_object() && root.contains("config") && root.contains("outputs") ? root.at("config") : root;
    Section top(j, "");
    top.allow({"mode", "valuation_date", "data", "grid", "simulation", "model", "credit", "funding", "metrics",
               "robust", "notional_unit", "threads", "output"});
    PipelineConfig c;
    c.mode = parse_mode(top.require<std::string>("mode"));
    c.valuation_date = top.get<std::string>("valuation_date", c.valuation_date);
    try {
        parse_date(c.valuation_date);
    } catch (const Error& e) {
        throw ConfigError(fmt::format("valuation_date: {}", e.what()));
    }

    auto data = top.section("data");
    data.allow({"snapshot", "second_snapshot", "portfolio"});
    c.snapshot = resolve(base_dir, data.require<std::string>("snapshot"));
    c.portfolio = resolve(base_dir, data.require<std::string>("portfolio"));
    if (data.has("second_snapshot")) c.second_snapshot = resolve(base_dir, data.get<std::string>("second_snapshot", ""));

    auto grid = top.section("grid");
    grid.allow({"step_months", "horizon_years"});
    c.step_months = grid.get<int>("step_months", c.step_months);
    c.horizon_years = grid.get<double>("horizon_years", c.horizon_years);
    if (c.step_months < 1) throw ConfigError("grid.step_months: must be at least 1");
    if (!(c.horizon_years > 0)) throw ConfigError("grid.horizon_years: must be positive");
    double steps = c.horizon_years * 12.0 / c.step_months;
    if (std::fabs(steps - std::round(steps)) > 1e-9)
        throw ConfigError("grid.horizon_years: must be a whole number of steps");

    auto sim = top.section("simulation");
    sim.allow({"n_paths", "seed", "second_seed"});
    c.n_paths = sim.get<std::size_t>("n_paths", c.n_paths);
    c.seed = sim.get<std::uint64_t>("seed", c.seed);
    c.second_seed = sim.get<std::uint64_t>("second_seed", c.second_seed);
    if (c.n_paths < 1) throw ConfigError("simulation.n_paths: must be at least 1");

    auto model = top.section("model");
    model.allow({"mean_reversion"});
    c.mean_reversion = model.get<double>("mean_reversion", c.mean_reversion);
    if (!(c.mean_reversion > 0)) throw ConfigError("model.mean_reversion: must be positive");

    auto credit = top.section("credit");
    credit.allow({"counterparty", "firm", "recovery_counterparty", "recovery_firm"});
    if (credit.has("counterparty")) c.counterparty = parse_credit(credit.section("counterparty"));
    if (credit.has("firm")) c.firm = parse_credit(credit.section("firm"));
    c.recovery_counterparty = credit.get<double>("recovery_counterparty", c.recovery_counterparty);
    c.recovery_firm = credit.get<double>("recovery_firm", c.recovery_firm);
    try {
        RecoveryConfig{c.recovery_counterparty, c.recovery_firm}.validate();
    } catch (const Error& e) {
        throw ConfigError(fmt::format("credit: {}", e.what()));
    }

    auto funding = top.section("funding");
    funding.allow({"curve", "vol0", "vol10"});
    c.funding_curve = funding.get<std::string>("curve", c.funding_curve);
    if (c.funding_curve != "ig" && c.funding_curve != "hy") throw ConfigError("funding.curve: expected ig or hy");
    c.funding_vol0 = funding.get<double>("vol0", c.funding_vol0);
    c.funding_vol10 = funding.get<double>("vol10", c.funding_vol10);
    if (!(c.funding_vol0 >= 0) || !(c.funding_vol10 >= 0)) throw ConfigError("funding: vols must be non-negative");
    if ((c.funding_vol0 > 0) != (c.funding_vol10 > 0))
        throw ConfigError("funding: vol0 and vol10 must be both zero or both positive");

    auto metrics = top.section("metrics");
    metrics.allow({"pfe_quantile"});
    c.pfe_quantile = metrics.get<double>("pfe_quantile", c.pfe_quantile);
    if (!(c.pfe_quantile > 0 && c.pfe_quantile < 1)) throw ConfigError("metrics.pfe_quantile: must lie in (0, 1)");

    auto robust = top.section("robust");
    robust.allow({"delta_percents", "s3_override", "s3_mode", "radius_source", "matching_cap"});
    c.delta_percents = robust.get<std::vector<double>>("delta_percents", c.delta_percents);
    if (c.delta_percents.empty()) throw ConfigError("robust.delta_percents: must not be empty");
    for (double p : c.delta_percents)
        if (!(p >= 0) || !std::isfinite(p)) throw ConfigError("robust.delta_percents: entries must be non-negative");
    if (robust.has("s3_override")) {
        c.s3_override = robust.get<double>("s3_override", 0.0);
        if (!(*c.s3_override > 0)) throw ConfigError("robust.s3_override: must be positive");
    }
    auto s3m = robust.get<std::string>("s3_mode", "pairwise_max");
    if (s3m == "pairwise_max") c.s3_mode = S3Mode::pairwise_max;
    else if (s3m == "time_mean_deviation") c.s3_mode = S3Mode::time_mean_deviation;
    else throw ConfigError("robust.s3_mode: expected pairwise_max or time_mean_deviation");
    auto rs = robust.get<std::string>("radius_source", "two_snapshots");
    if (rs == "two_snapshots") c.radius_source = RadiusSource::two_snapshots;
    else if (rs == "two_seeds") c.radius_source = RadiusSource::two_seeds;
    else throw ConfigError("robust.radius_source: expected two_snapshots or two_seeds");
    if (c.radius_source == RadiusSource::two_snapshots && c.second_snapshot.empty())
        throw ConfigError("data.second_snapshot: required when robust.radius_source is two_snapshots");
    c.matching_cap = robust.get<std::size_t>("matching_cap", c.matching_cap);
    if (c.matching_cap < 1) throw ConfigError("robust.matching_cap: must be at least 1");

    c.notional_unit = top.get<double>("notional_unit", c.notional_unit);
    if (!(c.notional_unit > 0)) throw ConfigError("notional_unit: must be positive");
    c.threads = top.get<int>("threads", c.threads);
    if (c.threads < 0) throw ConfigError("threads: must be non-negative");

    auto out = top.section("output");
    out.allow({"dir", "dump_samples"});
    c.output_dir = resolve(base_dir, out.get<std::string>("dir", c.output_dir.string()));
    c.dump_samples = out.get<bool>("dump_samples", c.dump_samples);
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config {}", path.string()));
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
    }
    return parse_config(j, std::filesystem::absolute(path).parent_path());
}

json config_to_json(const PipelineConfig& c) {
    auto credit = [](const CreditSource& s) {
        json j{{"source", credit_name(s)}};
        if (s.kind == CreditSource::Kind::flat) j["spread_bp"] = s.spread_bp;
        return j;
    };
    json data{{"snapshot", c.snapshot.string()}, {"portfolio", c.portfolio.string()}};
    if (!c.second_snapshot.empty()) data["second_snapshot"] = c.second_snapshot.string();
    json robust{{"delta_percents", c.delta_percents},
                {"s3_mode", c.s3_mode == S3Mode::pairwise_max ? "pairwise_max" : "time_mean_deviation"},
                {"radius_source", c.radius_source == RadiusSource::two_snapshots ? "two_snapshots" : "two_seeds"},
                {"matching_cap", c.matching_cap}};
    if (c.s3_override) robust["s3_override"] = *c.s3_override;
    return json{{"mode", mode_name(c.mode)},
                {"valuation_date", c.valuation_date},
                {"data", data},
                {"grid", {{"step_months", c.step_months}, {"horizon_years", c.horizon_years}}},
                {"simulation", {{"n_paths", c.n_paths}, {"seed", c.seed}, {"second_seed", c.second_seed}}},
                {"model", {{"mean_reversion", c.mean_reversion}}},
                {"credit",
                 {{"counterparty", credit(c.counterparty)},
                  {"firm", credit(c.firm)},
                  {"recovery_counterparty", c.recovery_counterparty},
                  {"recovery_firm", c.recovery_firm}}},
                {"funding", {{"curve", c.funding_curve}, {"vol0", c.funding_vol0}, {"vol10", c.funding_vol10}}},
                {"metrics", {{"pfe_quantile", c.pfe_quantile}}},
                {"robust", robust},
                {"notional_unit", c.notional_unit},
                {"threads", c.threads},
                {"output", {{"dir", c.output_dir.string()}, {"dump_samples", c.dump_samples}}}};
}

namespace {

HazardCurve hazard_for(const CreditSource& s, const MarketSnapshot& m, double recovery, const DiscountCurve& curve) {
    std::vector<TenorValue> quotes;
    switch (s.kind) {
        case CreditSource::Kind::flat: quotes = {{5.0, s.spread_bp * 1e-4}}; break;
        case CreditSource::Kind::cds_ig: quotes = {{5.0, m.cds_ig}}; break;
        case CreditSource::Kind::cds_hy: quotes = {{5.0, m.cds_hy}}; break;
        case CreditSource::Kind::hy_curve: quotes = m.hy_spreads; break;
    }
    return bootstrap_hazard_curve(quotes, recovery, curve);
}

struct SimulatedSet {
    HwCalibration hw;
    ExposureCube cube;
    DefaultDraws defaults;
    std::optional<FundingPaths> funding;
    BcvaDistribution bcva;
    FvaDistribution fva;
};

SimulatedSet simulate_set(const PipelineConfig& c, const std::filesystem::path& snapshot_dir, std::uint64_t seed,
                          const Portfolio& portfolio, const DateGrid& grid) {
    auto m = load_snapshot(snapshot_dir);
    SimulatedSet s;
    auto curve = bootstrap_discount_curve(m.swap_rates);
    s.hw = calibrate_hull_white(m.swaptions, curve, c.mean_reversion);
    HullWhite model(s.hw.params, curve);
    auto paths = simulate_short_rates(model, grid, c.n_paths, seed);
    s.cube = price_portfolio(paths, model, portfolio, grid);
    auto hc = hazard_for(c.counterparty, m, c.recovery_counterparty, curve);
    auto hf = hazard_for(c.firm, m, c.recovery_firm, curve);
    s.defaults = sample_default_pair(hc, hf, grid, c.n_paths, seed);
    if (is_funding(c.mode)) {
        const auto& spreads = c.funding_curve == "ig" ? m.funding_ig : m.funding_hy;
        if (spreads.empty()) throw DataError(fmt::format("{}: no {} funding quotes", snapshot_dir.string(), c.funding_curve));
        std::vector<double> pillars, values;
        for (const auto& q : spreads) {
            pillars.push_back(q.tenor);
            values.push_back(q.value);
        }
        FundingCurve fc(pillars, values, c.funding_vol0, c.funding_vol10);
        s.funding = simulate_funding(fc, fc, grid, c.n_paths, seed);
        s.fva = build_fva_samples(s.cube, s.defaults.cpty, s.defaults.firm, *s.funding);
    } else {
        s.bcva = build_bcva_samples(s.cube, s.defaults.cpty, s.defaults.firm,
                                    {c.recovery_counterparty, c.recovery_firm});
    }
    return s;
}

// Row-major paths x dates matrix of funding exposures; dates t_1..t_n.
std::vector<double> funding_exposure(const ExposureCube& cube, const FundingPaths& f, bool positive) {
    std::vector<double> out(f.n_paths * f.n);
    for (std::size_t i = 0; i < f.n_paths; ++i)
        for (std::size_t k = 1; k <= f.n; ++k)
            out[i * f.n + k - 1] = positive ? f.cost[i * f.n + k - 1] * cube.positive(i, k)
                                            : -f.benefit[i * f.n + k - 1] * cube.negative(i, k);
    return out;
}

template <class WC>
void record_worst_case(PipelineResult& r, const WC& wc, double delta) {
    r.worst_case_delta = delta;
    r.worst_case_cost = wc.transport_cost;
    r.worst_case_payoff = wc.expected_payoff;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& c) {
#ifdef _OPENMP
    if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
    PipelineResult r;
    r.config = c;
    Date valuation = parse_date(c.valuation_date);
    int n_steps = static_cast<int>(std::lround(c.horizon_years * 12.0 / c.step_months));
    auto grid = DateGrid::monthly(valuation, c.step_months, n_steps);
    r.n = grid.n();
    auto portfolio = load_portfolio(c.portfolio, valuation, c.notional_unit);
    for (const auto& s : portfolio)
        if (s.maturity > grid.horizon() + 10.0 / 365.0)
            throw DataError(fmt::format("{}: swap maturing at {:.4f}y lies beyond the {:.4f}y grid",
                                        c.portfolio.string(), s.maturity, grid.horizon()));

    auto main = simulate_set(c, c.snapshot, c.seed, portfolio, grid);
    r.hw_rmse = main.hw.rmse;
    r.hw_rel_rmse = main.hw.rel_rmse;
    r.hw_sigmas = main.hw.params.sigmas;
    r.hw_ends = main.hw.params.ends;
    r.ties_resampled = main.defaults.ties_resampled;
    r.ties_left = main.defaults.ties_left;

    auto second_dir = c.radius_source == RadiusSource::two_snapshots ? c.second_snapshot : c.snapshot;
    auto second = simulate_set(c, second_dir, c.second_seed, portfolio, grid);
    std::size_t m = std::min(c.n_paths, c.matching_cap);
    r.matched = m;

    const bool funding = is_funding(c.mode);
    if (funding) {
        const auto& d = main.fva;
        r.baselines = {{"fca", baseline_fca(d)}, {"fba", baseline_fba(d)}, {"fva", baseline_fva(d)}};
        r.s3 = c.s3_override ? *c.s3_override : calibrate_s3_fva(d, c.s3_mode);
        r.bounds = wasserstein_radius_bounds(head(d, m), head(second.fva, m), r.s3);
        std::vector<double> times(grid.times().begin() + 1, grid.times().end());
        r.positive_profile = exposure_profiles(funding_exposure(main.cube, *main.funding, true), c.n_paths, times,
                                               c.pfe_quantile);
        r.negative_profile = exposure_profiles(funding_exposure(main.cube, *main.funding, false), c.n_paths, times,
                                               c.pfe_quantile);
    } else {
        const auto& d = main.bcva;
        r.baselines = {{"cva", baseline_unilateral_cva(d)},
                       {"dva", baseline_unilateral_dva(d)},
                       {"bcva", baseline_bcva(d)}};
        r.s3 = c.s3_override ? *c.s3_override : calibrate_s3_bcva(d, c.s3_mode);
        r.bounds = wasserstein_radius_bounds(head(d, m), head(second.bcva, m), r.s3);
        auto neg = main.cube.negative_part();
        for (auto& v : neg) v = -v;
        r.positive_profile = exposure_profiles(main.cube.positive_part(), c.n_paths, grid.times(), c.pfe_quantile);
        r.negative_profile = exposure_profiles(neg, c.n_paths, grid.times(), c.pfe_quantile);
    }
    r.s3_overridden = c.s3_override.has_value();
    for (const auto& [name, v] : r.baselines)
        if (name == mode_name(c.mode) || (c.mode == Mode::ucva && name == "cva") || (c.mode == Mode::udva && name == "dva"))
            r.baseline = v;

    for (std::size_t k = 0; k <= grid.n(); ++k) {
        r.times.push_back(grid.t(k));
        r.dates.push_back(format_date(grid.dates()[k]));
    }

    auto deltas = r.bounds.grid(c.delta_percents);
    std::size_t wc_at = 0;
    for (std::size_t j = 1; j < deltas.size(); ++j)
        if (deltas[j] > deltas[wc_at]) wc_at = j;

    if (funding) {
        FvaDistribution d = c.mode == Mode::fca   ? positive_part(main.fva)
                            : c.mode == Mode::fba ? negative_part(main.fva)
                                                  : main.fva;
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            auto sol = minimize_dual_fva(d, deltas[j], r.s3);
            r.robust.push_back({c.delta_percents[j], deltas[j], sol.alpha, sol.value, sol.boundary, sol.note});
            if (j != wc_at) continue;
            if (sol.boundary) {
                r.worst_case_note = "boundary solution at the largest radius; no worst-case distribution";
                continue;
            }
            auto wc = recover_worst_case_fva(sol, d, deltas[j], r.s3);
            record_worst_case(r, wc, deltas[j]);
            for (const auto& a : wc.atoms)
                r.worst_case.push_back({a.source, a.weight, a.point.y.length, -1, fva_payoff(a.point), a.point.z});
        }
        if (c.dump_samples)
            for (std::size_t i = 0; i < main.fva.size(); ++i)
                r.samples.push_back({i, 1.0 / static_cast<double>(main.fva.size()), main.fva[i].y.length, -1,
                                     fva_payoff(main.fva[i]), main.fva[i].z});
    } else {
        BcvaDistribution d = c.mode == Mode::ucva   ? positive_leg(main.bcva)
                             : c.mode == Mode::udva ? negative_leg(main.bcva)
                                                    : main.bcva;
        double sign = c.mode == Mode::udva ? -1.0 : 1.0;
        for (std::size_t j = 0; j < deltas.size(); ++j) {
            auto sol = minimize_dual_bcva(d, deltas[j], r.s3);
            r.robust.push_back({c.delta_percents[j], deltas[j], sol.alpha, sign * sol.value, sol.boundary, sol.note});
            if (j != wc_at) continue;
            if (sol.boundary) {
                r.worst_case_note = "boundary solution at the largest radius; no worst-case distribution";
                continue;
            }
            auto wc = recover_worst_case_bcva(sol, d, deltas[j], r.s3);
            record_worst_case(r, wc, deltas[j]);
            r.worst_case_payoff *= sign;
            for (const auto& a : wc.atoms)
                r.worst_case.push_back(
                    {a.source, a.weight, a.point.yc.index, a.point.yf.index, sign * bcva_payoff(a.point), a.point.x});
        }
        if (c.dump_samples)
            for (std::size_t i = 0; i < main.bcva.size(); ++i)
                r.samples.push_back({i, 1.0 / static_cast<double>(main.bcva.size()), main.bcva[i].yc.index,
                                     main.bcva[i].yf.index, bcva_payoff(main.bcva[i]), main.bcva[i].x});
    }
    return r;
}

namespace {

// JSON writer with every floating-point value in the fixed 12-significant-digit format.
void emit(const json& j, std::string& out, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + json(it.key()).dump() + ": ";
                emit(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            break;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ", ";
                first = false;
                emit(v, out, indent + 1);
            }
            out += "]";
            break;
        }
        case json::value_t::number_float: out += format_number(j.get<double>()); break;
        default: out += j.dump(); break;
    }
}

void write_text(const std::filesystem::path& p, const std::string& s) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw DataError(fmt::format("cannot write {}", p.string()));
    f << s;
    if (!f) throw DataError(fmt::format("write failed for {}", p.string()));
}

std::string json_text(const json& j) {
    std::string s;
    emit(j, s, 0);
    return s + "\n";
}

std::string profile_csv(const ExposureProfile& p, const std::vector<std::string>& dates, std::size_t offset) {
    std::string s = "date,t,EE,PFE,EffEE\n";
    for (std::size_t k = 0; k < p.times.size(); ++k)
        s += fmt::format("{},{},{},{},{}\n", dates[k + offset], format_number(p.times[k]), format_number(p.ee[k]),
                         format_number(p.pfe[k]), format_number(p.eff_ee[k]));
    s += fmt::format("#scalars,EPE,{},EffEPE,{},MaxPFE,{},IntegratedPFE,{}\n", format_number(p.epe),
                     format_number(p.eff_epe), format_number(p.max_pfe), format_number(p.sum_pfe));
    return s;
}

std::string rows_csv(const std::vector<WorstCaseRow>& rows, bool funding, std::size_t n) {
    std::string s = funding ? "source,weight,survival_length,payoff" : "source,weight,cpty_default,firm_default,payoff";
    for (std::size_t k = 1; k <= n; ++k) s += fmt::format(",{}{}", funding ? "z" : "x", k);
    s += "\n";
    for (const auto& w : rows) {
        s += fmt::format("{},{},{}", w.source, format_number(w.weight), w.index1);
        if (!funding) s += fmt::format(",{}", w.index2);
        s += "," + format_number(w.payoff);
        for (double v : w.exposure) s += "," + format_number(v);
        s += "\n";
    }
    return s;
}

}  // namespace

void write_bundle(const PipelineResult& r, const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    const bool funding = is_funding(r.config.mode);
    fs::path target = fs::absolute(dir).lexically_normal();
    if (target.filename().empty()) target = target.parent_path();
    fs::path staging = target.parent_path() / (target.filename().string() + ".staging");
    std::error_code ec;
    fs::remove_all(staging, ec);
    fs::create_directories(staging, ec);
    if (ec) throw DataError(fmt::format("cannot create {}: {}", staging.string(), ec.message()));

    json baselines = json::object();
    for (const auto& [k, v] : r.baselines) baselines[k] = v;
    write_text(staging / "baseline.json",
               json_text({{"mode", mode_name(r.config.mode)}, {"baseline", r.baseline}, {"components", baselines}}));

    std::string series = "percent,delta,alpha,value,boundary,note\n";
    for (const auto& p : r.robust)
        series += fmt::format("{},{},{},{},{},\"{}\"\n", format_number(p.percent), format_number(p.delta),
                              format_number(p.alpha), format_number(p.value), p.boundary ? 1 : 0, p.note);
    write_text(staging / "robust_series.csv", series);

    std::string pos_name = funding ? "profile_fca.csv" : "profile_cva.csv";
    std::string neg_name = funding ? "profile_fba.csv" : "profile_dva.csv";
    std::size_t offset = funding ? 1 : 0;
    write_text(staging / pos_name, profile_csv(r.positive_profile, r.dates, offset));
    write_text(staging / neg_name, profile_csv(r.negative_profile, r.dates, offset));

    std::vector<std::string> files{"baseline.json", "robust_series.csv", pos_name, neg_name};
    if (!r.worst_case.empty()) {
        write_text(staging / "worst_case.csv", rows_csv(r.worst_case, funding, r.n));
        files.push_back("worst_case.csv");
    }
    if (!r.samples.empty()) {
        write_text(staging / "samples.csv", rows_csv(r.samples, funding, r.n));
        files.push_back("samples.csv");
    }

    json robust = json::array();
    for (const auto& p : r.robust)
        robust.push_back({{"percent", p.percent},
                          {"delta", p.delta},
                          {"alpha", p.alpha},
                          {"value", p.value},
                          {"boundary", p.boundary},
                          {"note", p.note}});
    files.push_back("manifest.json");
    json manifest{
        {"config", config_to_json(r.config)},
        {"seed", r.config.seed},
        {"second_seed", r.config.second_seed},
        {"n_paths", r.config.n_paths},
        {"n_dates", r.n},
        {"s3", r.s3},
        {"s3_overridden", r.s3_overridden},
        {"matching", {{"m", r.matched}, {"c_star", r.bounds.c_star}}},
        {"delta_l", r.bounds.delta_l},
        {"delta_u", r.bounds.delta_u},
        {"robust", robust},
        {"hull_white",
         {{"mean_reversion", r.config.mean_reversion},
          {"sigma_ends", r.hw_ends},
          {"sigmas", r.hw_sigmas},
          {"rmse", r.hw_rmse},
          {"rel_rmse", r.hw_rel_rmse}}},
        {"default_ties", {{"resampled", r.ties_resampled}, {"left", r.ties_left}}},
        {"worst_case",
         {{"delta", r.worst_case_delta},
          {"transport_cost", r.worst_case_cost},
          {"expected_payoff", r.worst_case_payoff},
          {"atoms", r.worst_case.size()},
          {"note", r.worst_case_note}}},
        {"outputs", files}};
    write_text(staging / "manifest.json", json_text(manifest));

    fs::remove_all(target, ec);
    fs::rename(staging, target, ec);
    if (ec) throw DataError(fmt::format("cannot move {} into place: {}", staging.string(), ec.message()));
}

}  // namespace rxva
