#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "run.hpp"

using namespace hkloost;
using namespace hkloost::harness;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "hkloost_cli_test";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("config round-trips through JSON") {
    ExperimentConfig cfg;
    cfg.command = "partial";
    cfg.m = 2;
    cfg.sampling = "grid";
    cfg.grid_step = 77;
    cfg.delta = 0.25;
    cfg.cache = "/tmp/x.cache";
    CHECK(from_json(to_json(cfg)) == cfg);
    CHECK(from_json(nlohmann::json::object()) == ExperimentConfig{});
}

TEST_CASE("unknown or mistyped fields are rejected") {
    CHECK_THROWS_AS(from_json({{"xmx", 100}}), ConfigError);
    CHECK_THROWS_AS(from_json({{"xmax", "lots"}}), ConfigError);
    CHECK_THROWS_AS(from_json(nlohmann::json::array()), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("exit code 2 for an invalid config") {
    ExperimentConfig cfg;
    cfg.command = "sum";
    cfg.c = 4;  // not in Gamma_0(3)
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitInvalidConfig);
    const auto rec = nlohmann::json::parse(err.str());
    CHECK(rec["error"] == "invalid_config");
    CHECK(rec["exit_code"] == 2);

    ExperimentConfig bad;
    bad.command = "frobnicate";
    std::ostringstream o2, e2;
    CHECK(run(bad, o2, e2) == kExitInvalidConfig);
}

TEST_CASE("exit code 3 outside the numeric regime") {
    ExperimentConfig cfg;
    cfg.command = "phi";
    cfg.r = 4.5;
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitRegime);
    CHECK(nlohmann::json::parse(err.str())["error"] == "numeric_regime");
}

TEST_CASE("exit code 4 on a corrupt cache with the line number") {
    const fs::path cache = scratch("corrupt.cache");
    {
        ExperimentConfig warm;
        warm.command = "partial";
        warm.xmax = 60;
        warm.cache = cache.string();
        std::ostringstream out, err;
        REQUIRE(run(warm, out, err) == kExitOk);
    }
    {
        std::ofstream f(cache, std::ios::app);
        f << "this is not a record\n";
    }
    std::size_t lines = 0;
    {
        std::ifstream in(cache);
        std::string s;
        while (std::getline(in, s)) ++lines;
    }
    ExperimentConfig cfg;
    cfg.command = "partial";
    cfg.xmax = 60;
    cfg.cache = cache.string();
    std::ostringstream out, err;
    CHECK(run(cfg, out, err) == kExitCacheCorruption);
    const auto rec = nlohmann::json::parse(err.str());
    CHECK(rec["error"] == "cache_corruption");
    CHECK(rec["path"] == cache.string());
    CHECK(rec["line"].get<std::size_t>() == lines);
}

TEST_CASE("csv emission") {
    PartialSumSeries empty;
    std::ostringstream e;
    emit_csv(empty, e);
    CHECK(e.str() == "c,s_re,s_im,run_re,run_im\n");

    const auto series = partial_sums(MultiplierSpec::eta(3).conjugate().twisted(3), 0, 1, 300, Sampling::all());
    std::ostringstream s;
    emit_csv(series, s);
    std::size_t rows = 0;
    std::string line;
    std::istringstream in(s.str());
    while (std::getline(in, line)) ++rows;
    CHECK(rows == series.rows.size() + 1);
    CHECK(series.rows.size() == 100);
}

TEST_CASE("warm and cold cache runs produce identical artifacts") {
    const fs::path cache = scratch("warm.cache");
    const fs::path cold_csv = scratch("cold.csv"), warm_csv = scratch("warm.csv"), none_csv = scratch("none.csv");
    ExperimentConfig cfg;
    cfg.command = "partial";
    cfg.xmax = 3000;
    cfg.sampling = "grid";
    cfg.grid_step = 250;
    cfg.cache = cache.string();
    std::ostringstream out, err;
    cfg.output = cold_csv.string();
    REQUIRE(run(cfg, out, err) == kExitOk);
    cfg.output = warm_csv.string();
    REQUIRE(run(cfg, out, err) == kExitOk);
    CHECK(slurp(cold_csv) == slurp(warm_csv));
    CHECK(fs::exists(fs::path(cold_csv.string() + ".json")));

    ExperimentConfig nocache = cfg;
    nocache.cache = "";
    nocache.output = none_csv.string();
    // Make sure the environment does not inject a cache.
    ::unsetenv("HKLOOST_CACHE_DIR");
    REQUIRE(run(nocache, out, err) == kExitOk);
    CHECK(slurp(none_csv) == slurp(cold_csv));
}

TEST_CASE("record echoes the config") {
    ExperimentConfig cfg;
    cfg.command = "sum";
    cfg.c = 9;
    std::ostringstream out, err;
    REQUIRE(run(cfg, out, err) == kExitOk);
    const auto rec = nlohmann::json::parse(out.str());
    CHECK(from_json(rec["config"]) == cfg);
    CHECK(rec["term_count"].get<int>() > 0);
}
