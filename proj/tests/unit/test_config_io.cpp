#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fpe/config.hpp"
#include "fpe/errors.hpp"
#include "fpe/io.hpp"
#include "json.hpp"

using namespace fpe;
namespace fs = std::filesystem;

namespace {
constexpr const char* kMinimal = R"({"alpha":1.5, "nu_h":0.1, "nx":64, "nz":129, "kind":"simulate", "t_end":1.0})";

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("fpe_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST(Config, MinimalDefaults) {
    const auto cfg = parse_config(kMinimal);
    EXPECT_EQ(cfg.kind, ExperimentKind::Simulate);
    EXPECT_FALSE(cfg.run.dt.has_value());
    EXPECT_TRUE(cfg.run.dealias);
    EXPECT_EQ(cfg.seed, 0u);
    EXPECT_EQ(cfg.run.grid.nx, 64);
    EXPECT_EQ(cfg.run.grid.nz, 129);
    EXPECT_DOUBLE_EQ(cfg.run.grid.alpha, 1.5);
    EXPECT_DOUBLE_EQ(cfg.run.cfl_safety, 0.5);
    EXPECT_EQ(cfg.run.mode, RunMode::Nonlinear);

    const auto echo = nlohmann::json::parse(config_to_json(cfg));
    EXPECT_EQ(echo.at("dt"), "auto");
    EXPECT_EQ(echo.at("dealias"), true);
    EXPECT_EQ(echo.at("seed"), 0);
    EXPECT_EQ(echo.at("symbol_scale"), "two_pi");
}

TEST(Config, EchoRoundTrips) {
    const std::string text = R"({"kind":"linear-evolve","alpha":0.5,"nu_h":0.05,"nx":64,"nz":257,"t_end":0.5,
        "dt":0.001,"initial":{"type":"eigenmode","n":2},"shear":{"L":15},"seed":7})";
    const auto a = parse_config(text);
    EXPECT_EQ(a.run.mode, RunMode::LinearPsi);
    ASSERT_TRUE(a.run.shear);
    EXPECT_DOUBLE_EQ(a.run.shear->L, 15.0);
    EXPECT_EQ(a.run.initial.seed, 7u);
    const auto echo = config_to_json(a);
    EXPECT_EQ(config_to_json(parse_config(echo)), echo);
}

TEST(Config, RangeErrorsNameTheField) {
    auto with = [](const std::string& kv) {
        return std::string(R"({"kind":"simulate","nx":64,"nz":129,)") + kv + "}";
    };
    EXPECT_NE(error_of(with(R"("alpha":2.5)")).find("alpha"), std::string::npos);
    EXPECT_NE(error_of(with(R"("nu_h":-1)")).find("nu_h"), std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"simulate","nx":63})").find("nx"), std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"simulate","nz":128})").find("nz"), std::string::npos);
    EXPECT_NE(error_of(with(R"("dt":"soon")")).find("dt"), std::string::npos);
    EXPECT_NE(error_of(with(R"("cfl_safety":0)")).find("cfl_safety"), std::string::npos);
    EXPECT_NE(error_of(with(R"("initial":{"type":"random","max_k":40})")).find("initial.max_k"), std::string::npos);
}

TEST(Config, StructuralErrors) {
    EXPECT_NE(error_of(R"({"alpha":1.0})").find("kind"), std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"bake"})").find("kind"), std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"simulate","colour":1})").find("colour"), std::string::npos);
    EXPECT_NE(error_of(R"({"kind":"simulate","initial":{"typ":"zero"}})").find("initial.typ"), std::string::npos);
    const auto msg = error_of("{\n  \"kind\": \"simulate\",\n  \"nx\": 64,,\n}");
    EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
    EXPECT_NE(error_of(R"({"kind":"criticality-scan","alpha":0.5,"scan":{"lambdas":[1,2],"nus":[0.1]},
        "initial":{"type":"eigenmode"}})").find("alpha"), std::string::npos);
    EXPECT_THROW(load_config("/nonexistent/config.json"), IoError);
}

TEST(Series, HeaderAndFormat) {
    RunConfig rc;
    rc.grid.nx = 16;
    rc.grid.nz = 17;
    rc.t_end = 0.05;
    rc.K = 2;
    rc.initial.kind = InitialData::Kind::Random;
    const auto csv = series_csv(run(rc));
    const auto header = csv.substr(0, csv.find('\n'));
    EXPECT_EQ(header, "t,E0,E1,E2,Et1,Et2,Et3,omega_inf,w_inf,u_inf,bkm_integrand,Y0,Y1,Y2");
    const auto second = csv.substr(header.size() + 1, csv.find('\n', header.size() + 1) - header.size() - 1);
    EXPECT_EQ(std::count(second.begin(), second.end(), ','), 13);
}

TEST(Series, DeterministicReruns) {
    RunConfig rc;
    rc.grid.nx = 32;
    rc.grid.nz = 33;
    rc.grid.nu_h = 0.05;
    rc.t_end = 0.2;
    rc.initial.kind = InitialData::Kind::Random;
    rc.initial.seed = 123;
    const auto dir = scratch("determinism");
    write_series(run(rc), dir / "a.csv");
    write_series(run(rc), dir / "b.csv");
    EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
    rc.initial.seed = 124;
    write_series(run(rc), dir / "c.csv");
    EXPECT_NE(slurp(dir / "a.csv"), slurp(dir / "c.csv"));
}

TEST(Snapshot, ZeroFieldPayloadAndSidecar) {
    GridSpec g;
    g.nx = 8;
    g.nz = 9;
    const auto dir = scratch("zero");
    write_snapshot(Field(g), 0.25, dir / "zero");
    const auto bin = slurp(dir / "zero.bin");
    ASSERT_EQ(bin.size(), 8u * 9u * 8u);
    for (char c : bin) EXPECT_EQ(c, 0);
    const auto side = nlohmann::json::parse(slurp(dir / "zero.json"));
    EXPECT_EQ(side.at("nx"), 8);
    EXPECT_EQ(side.at("nz"), 9);
    EXPECT_EQ(side.at("time"), 0.25);
    EXPECT_EQ(side.at("rng"), "mt19937_64/u53");
    EXPECT_EQ(side.at("dtype"), "float64-le");
    EXPECT_TRUE(side.contains("code_version"));
}

TEST(Snapshot, RoundTripIsExact) {
    GridSpec g;
    g.nx = 16;
    g.nz = 17;
    g.alpha = 0.7;
    g.symbol_scale = SymbolScale::One;
    Field f = Field::from_function(g, [](double x, double z) { return std::exp(z) * std::sin(7.0 * x) / 3.0; });
    const auto dir = scratch("roundtrip");
    write_snapshot(f, 1.0 / 3.0, dir / "snap");
    const auto s = read_snapshot(dir / "snap");
    EXPECT_EQ(s.t, 1.0 / 3.0);
    EXPECT_EQ(s.field.grid().symbol_scale, SymbolScale::One);
    EXPECT_EQ(s.field.grid().alpha, 0.7);
    EXPECT_TRUE(std::ranges::equal(s.field.values(), f.values()));
    // first value on disk is (z=0, x=0), the second (z=0, x=dx)
    const auto bin = slurp(dir / "snap.bin");
    double second;
    std::memcpy(&second, bin.data() + 8, 8);
    EXPECT_EQ(second, f(0, 1));
}

TEST(Io, FailuresCarryThePath) {
    try {
        write_text("/proc/fpe_forbidden/x.txt", "hi");
        FAIL() << "expected IoError";
    } catch (const IoError& e) {
        EXPECT_NE(std::string(e.what()).find("/proc/fpe_forbidden"), std::string::npos);
    }
    EXPECT_THROW(read_snapshot("/nonexistent/snap"), IoError);
}

TEST(Io, InequalityCsvRoundTrip) {
    EnsembleSpec spec;
    spec.seeds = 25;
    const auto samples = inequality_ensemble(spec);
    const auto dir = scratch("ineq");
    write_inequality_csv(samples, spec, dir / "i.csv");
    const auto back = read_inequality_csv(dir / "i.csv");
    ASSERT_EQ(back.size(), samples.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        EXPECT_EQ(back[i].seed, samples[i].seed);
        EXPECT_EQ(back[i].leibniz, samples[i].leibniz);
        EXPECT_EQ(back[i].borderline, samples[i].borderline);
    }
}
