#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rxva/pipeline.hpp"

using namespace rxva;
namespace fs = std::filesystem;

namespace {

const fs::path kRoot = RXVA_SOURCE_DIR;

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("rxva_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::map<std::string, std::string> read_bundle(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        out[e.path().filename().string()] = ss.str();
    }
    return out;
}

// A small run so the tests stay quick.
PipelineConfig small_config(const std::string& file, const fs::path& out) {
    auto c = load_config(kRoot / "configs" / file);
    c.n_paths = 120;
    c.delta_percents = {0, 50, 100};
    c.output_dir = out;
    return c;
}

int run_cli(const std::string& args) {
    std::string cmd = std::string(RXVA_CLI) + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("config errors name the offending field") {
        nlohmann::json j = {{"mode", "bcva"}, {"data", {{"snapshot", "a"}, {"portfolio", "b"}}}, {"grid", {{"step", 3}}}};
        try {
            parse_config(j, kRoot);
            FAIL("expected a ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("grid.step") != std::string::npos);
        }
        j = {{"mode", "xva"}, {"data", {{"snapshot", "a"}, {"portfolio", "b"}}}};
        CHECK_THROWS_AS(parse_config(j, kRoot), ConfigError);
        j = {{"data", {{"snapshot", "a"}, {"portfolio", "b"}}}};
        CHECK_THROWS_AS(parse_config(j, kRoot), ConfigError);
    }

    TEST_CASE("config round-trips through json") {
        auto c = load_config(kRoot / "configs" / "hy_fva.json");
        auto d = parse_config(config_to_json(c), kRoot);
        CHECK(config_to_json(d) == config_to_json(c));
        CHECK(d.mode == Mode::fva);
    }

    TEST_CASE("same config and seed give a byte-identical bundle; delta zero starts at the baseline") {
        auto dir = scratch("determinism");
        auto c = small_config("ig_bcva.json", dir / "bundle");
        auto r1 = run_pipeline(c);
        write_bundle(r1, c.output_dir);
        auto first = read_bundle(c.output_dir);
        write_bundle(run_pipeline(c), c.output_dir);
        CHECK(read_bundle(c.output_dir) == first);
        CHECK(!fs::exists(dir / "bundle.staging"));

        // One thread: only the echoed thread count in the manifest may differ.
        auto one = c;
        one.threads = 1;
        one.output_dir = dir / "one";
        write_bundle(run_pipeline(one), one.output_dir);
        auto single = read_bundle(one.output_dir), multi = first;
        single.erase("manifest.json");
        multi.erase("manifest.json");
        CHECK(single == multi);

        REQUIRE(r1.robust.front().percent == 0.0);
        CHECK(r1.robust.front().value == r1.baseline);
        for (std::size_t k = 1; k < r1.robust.size(); ++k) CHECK(r1.robust[k].value >= r1.robust[k - 1].value);
        CHECK(r1.bounds.delta_l * 2 == r1.bounds.delta_u);

        // Rerunning from the manifest reproduces the outputs.
        auto m = load_config(c.output_dir / "manifest.json");
        write_bundle(run_pipeline(m), m.output_dir);
        CHECK(read_bundle(c.output_dir) == first);
        fs::remove_all(dir);
    }

    TEST_CASE("funding modes") {
        auto dir = scratch("funding");
        auto c = small_config("ig_fva.json", dir / "fva");
        auto r = run_pipeline(c);
        CHECK(r.robust.front().value == r.baseline);
        REQUIRE(r.baselines.size() == 3);
        CHECK(r.baselines[2].second == doctest::Approx(r.baselines[0].second + r.baselines[1].second).epsilon(1e-12));
        c.mode = Mode::fba;
        auto b = run_pipeline(c);
        CHECK(b.baseline == r.baselines[1].second);
        fs::remove_all(dir);
    }

    TEST_CASE("cli exit codes") {
        auto dir = scratch("cli");
        CHECK(run_cli("") == 1);
        CHECK(run_cli("run") == 1);
        write_file(dir / "bad.json", R"({"mode": "bcva", "data": {"snapshot": "x", "portfolio": "y"}, "colour": 1})");
        CHECK(run_cli("check " + (dir / "bad.json").string()) == 2);
        write_file(dir / "nodata.json",
                   R"({"mode": "bcva", "data": {"snapshot": "missing_dir", "portfolio": "missing.csv"},
                       "robust": {"radius_source": "two_seeds"}})");
        CHECK(run_cli("run " + (dir / "nodata.json").string() + " --out " + (dir / "o").string()) == 3);
        CHECK(!fs::exists(dir / "o"));
        CHECK(run_cli("check " + (kRoot / "configs" / "ig_bcva.json").string()) == 0);
        CHECK(run_cli("run " + (kRoot / "configs" / "ig_fva.json").string() + " --paths 60 --out " +
                      (dir / "ok").string()) == 0);
        CHECK(fs::exists(dir / "ok" / "manifest.json"));
        CHECK(fs::exists(dir / "ok" / "profile_fca.csv"));
        fs::remove_all(dir);
    }
}
