#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "peridyn/config.hpp"
#include "peridyn/errors.hpp"
#include "peridyn/experiments.hpp"
#include "peridyn/report.hpp"
#include "peridyn/symbol_table.hpp"

using namespace peridyn;

TEST_CASE("config parsing: sections, comments, arrays, quoting") {
    const std::string text = R"(
# top comment
[model]
d = 2
delta = 0.25     # trailing comment
alpha = 0.75
kappa = 2.0
cutoff = "plateau"

[sweeps]
delta = [0.2, 0.1, 0.05]
)";
    ConfigFile config = ConfigFile::parse_string(text);
    CHECK(config.get_int("model", "d") == 2);
    CHECK(config.get_double("model", "delta") == 0.25);
    CHECK(config.get_string("model", "cutoff") == "plateau");
    CHECK(config.get_double_list("sweeps", "delta") == std::vector<double>{0.2, 0.1, 0.05});
    CHECK(config.get_double("model", "missing", 7.0) == 7.0);

    CHECK_THROWS_WITH_AS(config.get_double("model", "missing"),
                         "config: missing key 'model.missing'", ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_string("key value\n"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_string("[broken\n"), ConfigError);
    CHECK_THROWS_AS(ConfigFile::parse_file("/nonexistent/x.toml"), ConfigError);
}

TEST_CASE("model round trip through the flat key-value form") {
    ModelParams params;
    params.dim = 3;
    params.delta = 0.07;
    params.alpha = 0.25;
    params.kappa = 1.5;
    params.cutoff.kind = CutoffKind::PlateauSmooth;

    const std::string flat = format_model(params);
    ModelParams reparsed = parse_model(ConfigFile::parse_string(flat));
    CHECK(reparsed.dim == params.dim);
    CHECK(reparsed.delta == params.delta);
    CHECK(reparsed.alpha == params.alpha);
    CHECK(reparsed.kappa == params.kappa);
    CHECK(reparsed.cutoff.kind == params.cutoff.kind);

    // The same keys under a [model] section parse identically.
    ModelParams sectioned = parse_model(ConfigFile::parse_string("[model]\n" + flat));
    CHECK(sectioned.delta == params.delta);

    CHECK_THROWS_AS(parse_model(ConfigFile::parse_string("alpha = 2.0\n")), ConfigError);
    CHECK_THROWS_AS(parse_model(ConfigFile::parse_string("cutoff = \"box\"\n")), ConfigError);
}

TEST_CASE("log-log fitting recovers exact power laws") {
    std::vector<double> x{0.1, 0.2, 0.4, 0.8};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v * v);
    FitResult fit = fit_loglog("power", x, y);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.residual_rms < 1e-13);
    CHECK_THROWS_AS(fit_loglog("bad", {1.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(fit_loglog("bad", {1.0, -2.0}, {1.0, 1.0}), DomainError);
}

TEST_CASE("fnv1a64 published vectors") {
    CHECK(fnv1a64("") == 14695981039346656037ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("report assembly, verdict logic, determinism hash") {
    ExperimentReport report("demo");
    report.set_config_echo({{"seed", 1}});
    report.add_record({{"x", 1.0}});
    report.attach_csv("table.csv", "a,b\n1,2\n");

    Verdict pass{"ok", true, false, 0.5, "measured <= 1", ""};
    Verdict skip{"skipped", false, true, 0.0, "skipped", "not applicable"};
    report.add_verdict(pass);
    report.add_verdict(skip);
    CHECK(report.all_pass());

    const std::uint64_t hash1 = report.determinism_hash();
    CHECK(hash1 == report.determinism_hash());

    Verdict fail{"bad", false, false, 2.0, "measured <= 1", ""};
    report.add_verdict(fail);
    CHECK_FALSE(report.all_pass());
    CHECK(report.determinism_hash() != hash1);

    for (const Verdict& v : report.verdicts()) {
        CHECK_FALSE(v.tolerance.empty());
    }

    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "peridyn_report_test";
    std::filesystem::remove_all(dir);
    report.write(dir.string());
    CHECK(std::filesystem::exists(dir / "table.csv"));
    CHECK(std::filesystem::exists(dir / "report.json"));

    std::ifstream in(dir / "report.json");
    nlohmann::json doc = nlohmann::json::parse(in);
    CHECK(doc.contains("provenance"));
    char expected[32];
    std::snprintf(expected, sizeof(expected), "%016llx",
                  static_cast<unsigned long long>(report.determinism_hash()));
    CHECK(doc["provenance"]["determinism_hash"] == expected);
    CHECK(doc["records"].size() == 1);
}

TEST_CASE("trajectory export writes snapshots with matching checksums") {
    GridSpec grid(1, 16, 2.0);
    SymbolTable table = make_wave_symbol_table(grid, 1.0);
    EvolutionState state{band_limited_random(grid, 0.5 * grid.nyquist_radius(), 7),
                         SpectralField::zeros(grid), 0.0};
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "peridyn_trajectory_test";
    std::filesystem::remove_all(dir);

    ModelParams params;
    export_trajectory(dir.string(), table, state, {0.0, 0.5, 1.0}, params,
                      SymbolChoice::Continuum);

    std::ifstream in(dir / "manifest.json");
    REQUIRE(in.good());
    nlohmann::json manifest = nlohmann::json::parse(in);
    CHECK(manifest["times"].size() == 3);
    CHECK(manifest["symbol_choice"] == "continuum");
    REQUIRE(manifest["snapshots"].size() == 3);
    for (const auto& snapshot : manifest["snapshots"]) {
        const std::filesystem::path file = dir / snapshot["file"].get<std::string>();
        REQUIRE(std::filesystem::exists(file));
        std::ifstream blob(file, std::ios::binary);
        std::ostringstream bytes;
        bytes << blob.rdbuf();
        char hash_hex[32];
        std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(bytes.str())));
        CHECK(snapshot["fnv1a64"] == hash_hex);
    }
}
