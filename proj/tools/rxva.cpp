// Batch front end: rxva run <config.json> [overrides]

#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rxva/pipeline.hpp"

namespace {

enum Exit { ok = 0, usage = 1, config_error = 2, data_error = 3, numerical_error = 4 };

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wasserstein-robust CVA / DVA / BCVA / FCA / FBA / FVA"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run the full pipeline from a config (or a previous manifest)");
    std::string config_path, mode, out_dir;
    std::size_t n_paths = 0;
    long long seed = -1;
    int threads = -1;
    double unit = 0.0;
    bool dump = false;
    run->add_option("config", config_path, "JSON config file")->required()->check(CLI::ExistingFile);
    run->add_option("--mode", mode, "override mode: bcva, ucva, udva, fva, fca, fba");
    run->add_option("--out", out_dir, "override output directory");
    run->add_option("--paths", n_paths, "override number of paths");
    run->add_option("--seed", seed, "override primary seed");
    run->add_option("--threads", threads, "OpenMP threads (0 = default)");
    run->add_option("--notional-unit", unit, "override notional multiplier");
    run->add_flag("--dump-samples", dump, "also write samples.csv");

    auto* check = app.add_subcommand("check", "validate a config and its data files without running");
    std::string check_path;
    check->add_option("config", check_path, "JSON config file")->required()->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? ok : usage;
    }

    try {
        if (*check) {
            auto c = rxva::load_config(check_path);
            fmt::print("{}\n", rxva::config_to_json(c).dump(2));
            return ok;
        }
        auto c = rxva::load_config(config_path);
        if (!mode.empty()) {
            c.mode = rxva::parse_mode(mode);
        }
        if (!out_dir.empty()) c.output_dir = std::filesystem::absolute(out_dir);
        if (n_paths > 0) c.n_paths = n_paths;
        if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
        if (threads >= 0) c.threads = threads;
        if (unit > 0) c.notional_unit = unit;
        if (dump) c.dump_samples = true;

        auto t0 = std::chrono::steady_clock::now();
        auto r = rxva::run_pipeline(c);
        rxva::write_bundle(r, c.output_dir);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        fmt::print(stderr, "mode {}  paths {}  dates {}\n", rxva::mode_name(c.mode), c.n_paths, r.n);
        for (const auto& [k, v] : r.baselines) fmt::print(stderr, "  baseline {:<5} {}\n", k, rxva::format_number(v));
        fmt::print(stderr, "  S3 {}  delta_l {}  delta_u {}\n", rxva::format_number(r.s3),
                   rxva::format_number(r.bounds.delta_l), rxva::format_number(r.bounds.delta_u));
        for (const auto& p : r.robust)
            fmt::print(stderr, "  {:>5}%  delta {}  robust {}{}\n", p.percent, rxva::format_number(p.delta),
                       rxva::format_number(p.value), p.boundary ? "  (boundary)" : "");
        fmt::print(stderr, "  MaxPFE {}  IntegratedPFE {}\n", rxva::format_number(r.positive_profile.max_pfe),
                   rxva::format_number(r.positive_profile.sum_pfe));
        fmt::print(stderr, "wrote {} in {:.2f}s\n", c.output_dir.string(), secs);
        return ok;
    } catch (const rxva::ConfigError& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return config_error;
    } catch (const rxva::DataError& e) {
        fmt::print(stderr, "data error: {}\n", e.what());
        return data_error;
    } catch (const rxva::NumericalError& e) {
        fmt::print(stderr, "numerical failure: {}\n", e.what());
        return numerical_error;
    } catch (const rxva::Error& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return data_error;
    }
}
