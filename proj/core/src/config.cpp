#include "fpe/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fpe/errors.hpp"
#include "json.hpp"

namespace fpe {

using nlohmann::json;

namespace {

constexpr std::pair<ExperimentKind, std::string_view> kKinds[] = {
    {ExperimentKind::Dispersion, "dispersion"},
    {ExperimentKind::Eigenmode, "eigenmode"},
    {ExperimentKind::LinearEvolve, "linear-evolve"},
    {ExperimentKind::Simulate, "simulate"},
    {ExperimentKind::CriticalityScan, "criticality-scan"},
    {ExperimentKind::VerifyInequalities, "verify-inequalities"},
};

constexpr std::pair<InitialData::Kind, std::string_view> kInitialKinds[] = {
    {InitialData::Kind::Zero, "zero"},           {InitialData::Kind::Mode, "mode"},
    {InitialData::Kind::Random, "random"},       {InitialData::Kind::Eigenmode, "eigenmode"},
    {InitialData::Kind::Superposition, "superposition"},
};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ValidationError(field + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) fail(prefix + key, "unknown key");
}

double get_number(const json& obj, const std::string& key, const std::string& prefix, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(prefix + key, "expected a number");
    return v.get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& prefix, int fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) fail(prefix + key, "expected an integer");
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& key, const std::string& prefix, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_boolean()) fail(prefix + key, "expected a boolean");
    return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& prefix, std::string fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) fail(prefix + key, "expected a string");
    return v.get<std::string>();
}

std::vector<double> get_list(const json& obj, const std::string& key, const std::string& prefix) {
    if (!obj.contains(key)) return {};
    const auto& v = obj.at(key);
    if (!v.is_array()) fail(prefix + key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(prefix + key, "expected an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

std::string_view initial_name(InitialData::Kind k) {
    for (auto [kind, name] : kInitialKinds)
        if (kind == k) return name;
    return "zero";
}

void parse_initial(const json& obj, InitialData& init, bool& seed_given) {
    const std::string p = "initial.";
    if (!obj.is_object()) fail("initial", "expected an object");
    reject_unknown(obj, {"type", "amplitude", "n", "m", "seed", "max_k", "max_m", "s", "N", "weights", "sigma"}, p);
    const auto type = get_string(obj, "type", p, "zero");
    bool known = false;
    for (auto [kind, name] : kInitialKinds)
        if (name == type) init.kind = kind, known = true;
    if (!known) fail(p + "type", "unknown initial data type '" + type + "'");
    init.amplitude = get_number(obj, "amplitude", p, init.amplitude);
    init.n = get_int(obj, "n", p, init.n);
    init.m = get_int(obj, "m", p, init.m);
    if (obj.contains("seed")) {
        if (!obj.at("seed").is_number_unsigned()) fail(p + "seed", "expected a nonnegative integer");
        init.seed = obj.at("seed").get<std::uint64_t>();
        seed_given = true;
    }
    init.max_k = get_int(obj, "max_k", p, init.max_k);
    init.max_m = get_int(obj, "max_m", p, init.max_m);
    init.s = get_number(obj, "s", p, init.s);
    init.N = get_int(obj, "N", p, init.N);
    const auto weights = get_string(obj, "weights", p, "sobolev");
    if (weights == "sobolev")
        init.weights = SuperpositionKind::Sobolev;
    else if (weights == "gevrey")
        init.weights = SuperpositionKind::Gevrey;
    else
        fail(p + "weights", "expected sobolev or gevrey");
    init.sigma = get_number(obj, "sigma", p, init.sigma);

    if (init.n < 0) fail(p + "n", "must be >= 0");
    if (init.m < 1) fail(p + "m", "must be >= 1");
    if (init.max_k < 0) fail(p + "max_k", "must be >= 0");
    if (init.max_m < 1) fail(p + "max_m", "must be >= 1");
    if (init.s < 0) fail(p + "s", "must be >= 0");
    if (init.N < 1) fail(p + "N", "must be >= 1");
    if (init.weights == SuperpositionKind::Gevrey && !(init.sigma > 1.0)) fail(p + "sigma", "must be > 1");
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
    for (auto [kind, name] : kKinds)
        if (kind == k) return name;
    return "simulate";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
    for (auto [kind, n] : kKinds)
        if (n == name) return kind;
    throw ValidationError("kind: unknown experiment kind '" + std::string(name) + "'");
}

void ExperimentConfig::build_shear() {
    if (!shear) return;
    if (shear->type != "tanh") throw ValidationError("shear.type: only 'tanh' is supported");
    run.shear = ShearProfile::tanh_profile(run.grid.nz, shear->L, shear->amplitude);
}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string(source) + ":" + std::to_string(line_of(text, e.byte)) +
                              ": JSON parse error: " + e.what());
    }
    if (!j.is_object()) throw ValidationError(std::string(source) + ": top level must be a JSON object");

    reject_unknown(j,
                   {"kind", "alpha", "nu_h", "nx", "nz", "symbol_scale", "t_end", "dt", "dt_max", "cfl_safety",
                    "dealias", "sample_every", "K", "growth_limit", "seed", "output_dir", "shear", "initial", "scan",
                    "ensemble", "snapshots"},
                   "");

    ExperimentConfig cfg;
    if (!j.contains("kind")) fail("kind", "missing required key");
    if (!j.at("kind").is_string()) fail("kind", "expected a string");
    cfg.kind = experiment_kind_from_string(j.at("kind").get<std::string>());

    auto& run = cfg.run;
    auto& g = run.grid;
    g.alpha = get_number(j, "alpha", "", g.alpha);
    g.nu_h = get_number(j, "nu_h", "", g.nu_h);
    g.nx = get_int(j, "nx", "", g.nx);
    g.nz = get_int(j, "nz", "", g.nz);
    const auto scale = get_string(j, "symbol_scale", "", "two_pi");
    if (scale == "two_pi")
        g.symbol_scale = SymbolScale::TwoPi;
    else if (scale == "one")
        g.symbol_scale = SymbolScale::One;
    else
        fail("symbol_scale", "expected two_pi or one");

    if (!(g.alpha > 0.0 && g.alpha <= 2.0)) fail("alpha", "must lie in (0,2], got " + std::to_string(g.alpha));
    if (!(g.nu_h >= 0.0)) fail("nu_h", "must be >= 0");
    if (g.nx <= 0 || g.nx % 2) fail("nx", "must be a positive even integer");
    if (g.nz < 5 || g.nz % 2 == 0) fail("nz", "must be an odd integer >= 5");

    run.t_end = get_number(j, "t_end", "", run.t_end);
    if (!(run.t_end > 0.0)) fail("t_end", "must be > 0");
    if (j.contains("dt")) {
        const auto& v = j.at("dt");
        if (v.is_string() && v.get<std::string>() == "auto")
            run.dt.reset();
        else if (v.is_number() && v.get<double>() > 0.0)
            run.dt = v.get<double>();
        else
            fail("dt", "expected \"auto\" or a positive number");
    }
    run.dt_max = get_number(j, "dt_max", "", run.dt_max);
    if (!(run.dt_max > 0.0)) fail("dt_max", "must be > 0");
    run.cfl_safety = get_number(j, "cfl_safety", "", run.cfl_safety);
    if (!(run.cfl_safety > 0.0 && run.cfl_safety <= 1.0)) fail("cfl_safety", "must lie in (0,1]");
    run.dealias = get_bool(j, "dealias", "", run.dealias);
    run.sample_every = get_int(j, "sample_every", "", run.sample_every);
    if (run.sample_every < 1) fail("sample_every", "must be >= 1");
    run.K = get_int(j, "K", "", run.K);
    if (run.K < 0 || run.K > kMaxEnergyLevel) fail("K", "must lie in [0, 4]");
    run.growth_limit = get_number(j, "growth_limit", "", run.growth_limit);
    if (!(run.growth_limit > 1.0)) fail("growth_limit", "must be > 1");

    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) fail("seed", "expected a nonnegative integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    cfg.output_dir = get_string(j, "output_dir", "", cfg.output_dir);
    cfg.snapshots = get_bool(j, "snapshots", "", cfg.snapshots);

    if (j.contains("shear")) {
        const auto& s = j.at("shear");
        if (!s.is_object()) fail("shear", "expected an object");
        reject_unknown(s, {"type", "L", "amplitude"}, "shear.");
        ShearSpec spec;
        spec.type = get_string(s, "type", "shear.", spec.type);
        if (spec.type != "tanh") fail("shear.type", "only 'tanh' is supported");
        spec.L = get_number(s, "L", "shear.", spec.L);
        if (!(spec.L > 0.0)) fail("shear.L", "must be > 0");
        spec.amplitude = get_number(s, "amplitude", "shear.", spec.amplitude);
        cfg.shear = spec;
    }

    bool seed_given = false;
    if (j.contains("initial")) parse_initial(j.at("initial"), run.initial, seed_given);
    if (!seed_given) run.initial.seed = cfg.seed;

    if (j.contains("scan")) {
        const auto& s = j.at("scan");
        if (!s.is_object()) fail("scan", "expected an object");
        reject_unknown(s, {"lambdas", "nus"}, "scan.");
        cfg.scan_lambdas = get_list(s, "lambdas", "scan.");
        cfg.scan_nus = get_list(s, "nus", "scan.");
        for (double l : cfg.scan_lambdas)
            if (!(l > 0.0)) fail("scan.lambdas", "entries must be > 0");
        for (double n : cfg.scan_nus)
            if (!(n >= 0.0)) fail("scan.nus", "entries must be >= 0");
    }

    if (j.contains("ensemble")) {
        const auto& e = j.at("ensemble");
        if (!e.is_object()) fail("ensemble", "expected an object");
        reject_unknown(e, {"seeds", "s", "nx", "max_degree"}, "ensemble.");
        auto& en = cfg.ensemble;
        en.seeds = get_int(e, "seeds", "ensemble.", en.seeds);
        en.s = get_number(e, "s", "ensemble.", en.s);
        en.nx = get_int(e, "nx", "ensemble.", en.nx);
        en.max_degree = get_int(e, "max_degree", "ensemble.", en.max_degree);
        if (en.seeds < 1) fail("ensemble.seeds", "must be >= 1");
        if (!(en.s > 0.0 && en.s < 1.0)) fail("ensemble.s", "must lie in (0,1)");
        if (en.nx <= 0 || en.nx % 2) fail("ensemble.nx", "must be a positive even integer");
        if (en.max_degree < 1) fail("ensemble.max_degree", "must be >= 1");
    }
    cfg.ensemble.first_seed = cfg.seed;
    cfg.ensemble.scale = g.symbol_scale;

    switch (cfg.kind) {
        case ExperimentKind::LinearEvolve:
        case ExperimentKind::CriticalityScan:
        case ExperimentKind::Eigenmode:
        case ExperimentKind::Dispersion:
            run.mode = RunMode::LinearPsi;
            if (!cfg.shear) cfg.shear = ShearSpec{};
            break;
        default:
            run.mode = RunMode::Nonlinear;
    }
    const bool eig = run.initial.kind == InitialData::Kind::Eigenmode ||
                     run.initial.kind == InitialData::Kind::Superposition;
    if (eig && !cfg.shear) fail("shear", "required by eigenmode/superposition initial data");
    if (cfg.kind == ExperimentKind::CriticalityScan) {
        if (g.alpha != 1.0) fail("alpha", "criticality-scan requires alpha = 1");
        if (cfg.scan_lambdas.size() < 2) fail("scan.lambdas", "need at least two entries");
        if (cfg.scan_nus.empty()) fail("scan.nus", "need at least one entry");
        if (run.initial.kind != InitialData::Kind::Eigenmode) fail("initial.type", "criticality-scan needs eigenmode");
    }
    if (run.initial.kind == InitialData::Kind::Random && run.initial.max_k > g.dealias_cutoff())
        fail("initial.max_k", "exceeds the dealiased band nx/3");
    if (run.initial.kind == InitialData::Kind::Superposition && 3 * run.initial.N > g.nx)
        fail("initial.N", "mode count exceeds nx/3");
    if (run.initial.kind == InitialData::Kind::Eigenmode && (run.initial.n < 1 || 2 * run.initial.n >= g.nx))
        fail("initial.n", "eigenmode index must lie in [1, nx/2)");

    try {
        cfg.build_shear();
        run.validate();
    } catch (const ParameterError& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    const auto& r = cfg.run;
    const auto& g = r.grid;
    json j;
    j["kind"] = std::string(to_string(cfg.kind));
    j["alpha"] = g.alpha;
    j["nu_h"] = g.nu_h;
    j["nx"] = g.nx;
    j["nz"] = g.nz;
    j["symbol_scale"] = std::string(to_string(g.symbol_scale));
    j["t_end"] = r.t_end;
    if (r.dt)
        j["dt"] = *r.dt;
    else
        j["dt"] = "auto";
    j["dt_max"] = r.dt_max;
    j["cfl_safety"] = r.cfl_safety;
    j["dealias"] = r.dealias;
    j["sample_every"] = r.sample_every;
    j["K"] = r.K;
    j["growth_limit"] = r.growth_limit;
    j["seed"] = cfg.seed;
    j["output_dir"] = cfg.output_dir;
    j["snapshots"] = cfg.snapshots;
    if (cfg.shear) j["shear"] = {{"type", cfg.shear->type}, {"L", cfg.shear->L}, {"amplitude", cfg.shear->amplitude}};
    const auto& in = r.initial;
    j["initial"] = {{"type", std::string(initial_name(in.kind))},
                    {"amplitude", in.amplitude},
                    {"n", in.n},
                    {"m", in.m},
                    {"seed", in.seed},
                    {"max_k", in.max_k},
                    {"max_m", in.max_m},
                    {"s", in.s},
                    {"N", in.N},
                    {"weights", in.weights == SuperpositionKind::Sobolev ? "sobolev" : "gevrey"},
                    {"sigma", in.sigma}};
    if (cfg.kind == ExperimentKind::CriticalityScan) j["scan"] = {{"lambdas", cfg.scan_lambdas}, {"nus", cfg.scan_nus}};
    if (cfg.kind == ExperimentKind::VerifyInequalities)
        j["ensemble"] = {{"seeds", cfg.ensemble.seeds},
                         {"s", cfg.ensemble.s},
                         {"nx", cfg.ensemble.nx},
                         {"max_degree", cfg.ensemble.max_degree}};
    return j.dump(2) + "\n";
}

}  // namespace fpe
