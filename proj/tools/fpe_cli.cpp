// Command-line front end: dispersion roots, eigenmodes, linear and nonlinear
// runs, criticality scans and the inequality ensemble.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fpe/config.hpp"
#include "fpe/errors.hpp"
#include "fpe/io.hpp"
#include "fpe/shear.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBlowup = 3;

struct DispersionArgs {
    std::string shear = "tanh";
    double L = 20.0;
    double amplitude = 1.0;
    int nz = 1025;
    double tol = 1e-12;
    std::string out;
};

struct EigenArgs {
    int n = 4;
    double alpha = 0.5;
    double nu = 0.05;
    double L = 20.0;
    int nz = 2049;
    std::string out;
};

struct InequalityArgs {
    int seeds = 1000;
    double s = 0.5;
    int nx = 128;
    int max_degree = 32;
    std::uint64_t first_seed = 0;
    std::string out;
    bool refine = false;
};

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw fpe::IoError("cannot create directory " + dir.string() + ": " + ec.message());
}

// Root of the dispersion relation with the grid doubled until gamma settles.
struct RefinedRoot {
    fpe::DispersionRoot root;
    int nz = 0;
    double change = 0.0;
};

RefinedRoot refined_root(const fpe::ShearProfile& base, double tol, int max_nz = 16385) {
    RefinedRoot r;
    r.nz = base.nz;
    r.root = fpe::solve_dispersion(base, {}, tol);
    r.change = std::numeric_limits<double>::infinity();
    while (r.nz < max_nz) {
        const int nz = 2 * r.nz - 1;
        const auto next = fpe::solve_dispersion(base.resampled(nz), {}, tol);
        r.change = std::abs(next.gamma - r.root.gamma);
        r.root = next;
        r.nz = nz;
        if (r.change <= tol) break;
    }
    return r;
}

int cmd_dispersion(const DispersionArgs& a) {
    if (a.shear != "tanh") throw fpe::ValidationError("shear: only 'tanh' is supported");
    if (!(a.L > 0.0)) throw fpe::ValidationError("L: must be > 0");
    if (a.nz < 5 || a.nz % 2 == 0) throw fpe::ValidationError("nz: must be an odd integer >= 5");
    const auto U = fpe::ShearProfile::tanh_profile(a.nz, a.L, a.amplitude);
    const auto r = refined_root(U, a.tol);

    json j = {{"shear", a.shear},         {"L", a.L},
              {"amplitude", a.amplitude}, {"gamma", r.root.gamma},
              {"phase_speed", r.root.phase_speed}, {"F_re", r.root.F.real()},
              {"F_im", r.root.F.imag()},  {"nz", r.nz},
              {"refinement_change", r.change}, {"symmetry_violation", r.root.symmetry_violation}};
    std::cout << "gamma " << g17(r.root.gamma) << "\n"
              << "|F| " << g17(std::abs(r.root.F)) << "\n"
              << "nz " << r.nz << " (last refinement change " << g17(r.change) << ")\n";
    if (!a.out.empty()) {
        ensure_dir(a.out);
        fpe::write_text(fs::path(a.out) / "dispersion.json", j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_eigenmode(const EigenArgs& a) {
    if (a.n < 1) throw fpe::ValidationError("n: must be >= 1");
    if (!(a.alpha > 0.0 && a.alpha <= 2.0)) throw fpe::ValidationError("alpha: must lie in (0,2]");
    if (!(a.nu >= 0.0)) throw fpe::ValidationError("nu: must be >= 0");
    if (a.nz < 5 || a.nz % 2 == 0) throw fpe::ValidationError("nz: must be an odd integer >= 5");
    const auto U = fpe::ShearProfile::tanh_profile(a.nz, a.L);
    const double gamma = fpe::find_gamma(U);
    const auto eig = fpe::make_eigensolution(U, gamma, a.alpha, a.nu, a.n);

    std::cout << "gamma " << g17(gamma) << "\n"
              << "boundary_defect " << g17(eig.boundary_defect()) << "\n";
    std::ostringstream beta;
    beta << "n,beta_n,growth_rate,residual\n";
    for (const auto& [n, b] : eig.beta) {
        const double res = fpe::residual_orr_sommerfeld(U, gamma, eig.chi, n, a.alpha, a.nu);
        std::cout << "n=" << n << " beta_n=" << g17(b) << " rate=" << g17(n * b) << " residual=" << g17(res)
                  << "\n";
        beta << n << ',' << g17(b) << ',' << g17(n * b) << ',' << g17(res) << '\n';
    }
    if (!a.out.empty()) {
        ensure_dir(a.out);
        const fs::path dir(a.out);
        fpe::write_text(dir / "beta.csv", beta.str());
        std::ostringstream chi;
        chi << "z,chi_re,chi_im,chi_zz_re,chi_zz_im\n";
        for (int j = 0; j < U.nz; ++j)
            chi << g17(j * U.h()) << ',' << g17(eig.chi[j].real()) << ',' << g17(eig.chi[j].imag()) << ','
                << g17(eig.chi_zz[j].real()) << ',' << g17(eig.chi_zz[j].imag()) << '\n';
        fpe::write_text(dir / "chi.csv", chi.str());
        json j = {{"gamma", gamma}, {"alpha", a.alpha}, {"nu_h", a.nu},  {"L", a.L},
                  {"nz", a.nz},     {"n_max", a.n},     {"boundary_defect", eig.boundary_defect()}};
        fpe::write_text(dir / "eigenmode.json", j.dump(2) + "\n");
    }
    return kExitOk;
}

fpe::Field physical_state(const fpe::ExperimentConfig& cfg, const fpe::SpectralField& s) {
    if (cfg.run.mode == fpe::RunMode::LinearPsi) {
        const fpe::LinearPsiOperator op(cfg.run.grid, *cfg.run.shear);
        return fpe::x_inverse(op.stream_function(s));
    }
    return fpe::x_inverse(s);
}

void write_summary(const fs::path& dir, const fpe::Trajectory& traj, json extra) {
    extra["steps"] = traj.steps;
    extra["samples"] = traj.times.size();
    extra["t_final"] = traj.times.empty() ? 0.0 : traj.times.back();
    extra["blowup"] = traj.blowup;
    extra["blowup_reason"] = traj.blowup_reason;
    fpe::write_text(dir / "summary.json", extra.dump(2) + "\n");
}

int cmd_run(const std::string& path, fpe::ExperimentKind expected) {
    auto cfg = fpe::load_config(path);
    if (cfg.kind != expected)
        throw fpe::ValidationError("kind: config declares '" + std::string(fpe::to_string(cfg.kind)) +
                                   "' but the subcommand is '" + std::string(fpe::to_string(expected)) + "'");
    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    fpe::write_text(dir / "effective_config.json", fpe::config_to_json(cfg));

    const auto initial = fpe::initial_state(cfg.run);
    if (cfg.snapshots) fpe::write_snapshot(physical_state(cfg, initial), 0.0, dir / "snapshot_initial");
    const auto traj = fpe::run(cfg.run, initial);
    fpe::write_series(traj, dir / "series.csv");
    fpe::write_probes(traj, dir / "probes.csv");
    if (cfg.snapshots && !traj.blowup)
        fpe::write_snapshot(physical_state(cfg, traj.final_state), traj.times.back(), dir / "snapshot_final");

    json extra;
    if (cfg.run.mode == fpe::RunMode::Nonlinear) {
        const auto mp = fpe::max_principle_check(traj);
        extra["max_principle_overshoot"] = mp.overshoot;
        extra["max_principle_pass"] = mp.pass;
        extra["bkm_integral"] = fpe::bkm_report(traj);
    } else if (cfg.run.initial.kind == fpe::InitialData::Kind::Eigenmode && traj.times.size() >= 20) {
        const int n = cfg.run.initial.n;
        const double gamma = fpe::find_gamma(*cfg.run.shear);
        extra["gamma"] = gamma;
        extra["predicted_rate"] = n * fpe::beta_n(gamma, cfg.run.grid.alpha, cfg.run.grid.nu_h, n);
        try {
            extra["fitted_rate"] = fpe::fit_growth_rate(traj.times, traj.probe_series(n), 0.5 * traj.times.back(),
                                                        traj.times.back());
        } catch (const fpe::FitError& e) {
            extra["fit_error"] = e.what();
        }
    }
    write_summary(dir, traj, extra);

    std::cout << "steps " << traj.steps << ", t = " << (traj.times.empty() ? 0.0 : traj.times.back()) << ", output "
              << dir.string() << "\n";
    if (traj.blowup) {
        std::cerr << "blowup: " << traj.blowup_reason << "\n";
        return kExitBlowup;
    }
    return kExitOk;
}

int cmd_scan(const std::string& path) {
    auto cfg = fpe::load_config(path);
    if (cfg.kind != fpe::ExperimentKind::CriticalityScan)
        throw fpe::ValidationError("kind: criticality-scan subcommand needs kind \"criticality-scan\"");
    const fs::path dir(cfg.output_dir);
    ensure_dir(dir);
    fpe::write_text(dir / "effective_config.json", fpe::config_to_json(cfg));
    const auto table = fpe::criticality_scan(cfg.run, cfg.scan_lambdas, cfg.scan_nus);
    fpe::write_scan_csv(table, dir / "scan.csv");

    json thresholds = json::array();
    bool blowup = false;
    for (const auto& c : table.cells) blowup = blowup || c.blowup;
    for (double nu : cfg.scan_nus) {
        const auto lam = table.threshold(nu);
        json row = {{"nu_h", nu}, {"predicted", nu / table.gamma}};
        if (lam) {
            row["lambda_star"] = *lam;
            row["relative_error"] = std::abs(*lam * table.gamma - nu) / nu;
            std::cout << "nu_h=" << nu << " lambda*=" << g17(*lam) << " predicted " << g17(nu / table.gamma) << "\n";
        } else {
            row["lambda_star"] = nullptr;
            std::cout << "nu_h=" << nu << " no sign change on the lambda grid\n";
        }
        thresholds.push_back(row);
    }
    json summary = {{"gamma", table.gamma}, {"n", table.n}, {"thresholds", thresholds}, {"blowup", blowup}};
    fpe::write_text(dir / "summary.json", summary.dump(2) + "\n");
    return blowup ? kExitBlowup : kExitOk;
}

int cmd_inequalities(const InequalityArgs& a) {
    if (a.seeds < 1) throw fpe::ValidationError("seeds: must be >= 1");
    if (!(a.s > 0.0 && a.s < 1.0)) throw fpe::ValidationError("s: must lie in (0,1)");
    if (a.nx <= 0 || a.nx % 2) throw fpe::ValidationError("nx: must be a positive even integer");
    fpe::EnsembleSpec spec;
    spec.seeds = a.seeds;
    spec.s = a.s;
    spec.nx = a.nx;
    spec.max_degree = a.max_degree;
    spec.first_seed = a.first_seed;
    const auto samples = fpe::inequality_ensemble(spec);
    const auto mx = fpe::ensemble_max(samples);
    std::cout << "leibniz_max " << g17(mx.leibniz) << "\nborderline_max " << g17(mx.borderline) << "\n";
    json j = {{"seeds", a.seeds},        {"s", a.s},
              {"nx", a.nx},              {"max_degree", a.max_degree},
              {"first_seed", a.first_seed}, {"rng", std::string(fpe::SeededRng::kAlgorithm)},
              {"leibniz_max", mx.leibniz}, {"borderline_max", mx.borderline}};
    if (a.refine) {
        auto fine = spec;
        fine.nx = 2 * spec.nx;
        const auto mf = fpe::ensemble_max(fpe::inequality_ensemble(fine));
        const double dl = std::abs(mf.leibniz - mx.leibniz) / mx.leibniz;
        const double db = std::abs(mf.borderline - mx.borderline) / mx.borderline;
        std::cout << "drift at nx=" << fine.nx << ": leibniz " << g17(dl) << ", borderline " << g17(db) << "\n";
        j["drift_leibniz"] = dl;
        j["drift_borderline"] = db;
    }
    if (!a.out.empty()) {
        const fs::path out(a.out);
        if (out.has_parent_path()) ensure_dir(out.parent_path());
        fpe::write_inequality_csv(samples, spec, out);
        fs::path side = out;
        side.replace_extension(".json");
        fpe::write_text(side, j.dump(2) + "\n");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Primitive-equation shear instability and fractional-dissipation lab"};
    app.set_version_flag("--version", std::string(fpe::code_version()));
    app.require_subcommand(1);

    DispersionArgs disp;
    auto* c_disp = app.add_subcommand("dispersion", "root gamma of the dispersion relation for a shear profile");
    c_disp->add_option("--shear", disp.shear, "profile family")->capture_default_str();
    c_disp->add_option("--L", disp.L, "tanh steepness")->capture_default_str();
    c_disp->add_option("--amplitude", disp.amplitude, "profile amplitude")->capture_default_str();
    c_disp->add_option("--nz", disp.nz, "starting vertical resolution")->capture_default_str();
    c_disp->add_option("--tol", disp.tol, "root tolerance")->capture_default_str();
    c_disp->add_option("--out", disp.out, "output directory");

    EigenArgs eig;
    auto* c_eig = app.add_subcommand("eigenmode", "eigenfunction chi and growth rates beta_n");
    c_eig->add_option("--n", eig.n, "largest mode in the growth table")->capture_default_str();
    c_eig->add_option("--alpha", eig.alpha, "dissipation order")->capture_default_str();
    c_eig->add_option("--nu", eig.nu, "horizontal viscosity")->capture_default_str();
    c_eig->add_option("--L", eig.L, "tanh steepness")->capture_default_str();
    c_eig->add_option("--nz", eig.nz, "vertical resolution")->capture_default_str();
    c_eig->add_option("--out", eig.out, "output directory");

    std::string config_path;
    auto* c_lin = app.add_subcommand("linear-evolve", "linearized stream-function run");
    c_lin->add_option("config", config_path, "JSON config")->required();
    auto* c_sim = app.add_subcommand("simulate", "nonlinear run");
    c_sim->add_option("config", config_path, "JSON config")->required();
    auto* c_scan = app.add_subcommand("criticality-scan", "growth-rate sign across (lambda, nu_h) at alpha = 1");
    c_scan->add_option("config", config_path, "JSON config")->required();

    InequalityArgs ineq;
    auto* c_ineq = app.add_subcommand("verify-inequalities", "seeded ensemble of Leibniz-type ratios");
    c_ineq->add_option("--seeds", ineq.seeds, "ensemble size")->capture_default_str();
    c_ineq->add_option("--s", ineq.s, "fractional order")->capture_default_str();
    c_ineq->add_option("--nx", ineq.nx, "samples per function")->capture_default_str();
    c_ineq->add_option("--max-degree", ineq.max_degree, "largest polynomial degree")->capture_default_str();
    c_ineq->add_option("--first-seed", ineq.first_seed, "first seed")->capture_default_str();
    c_ineq->add_option("--out", ineq.out, "CSV output path");
    c_ineq->add_flag("--refine", ineq.refine, "also report drift at 2*nx");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (c_disp->parsed()) return cmd_dispersion(disp);
        if (c_eig->parsed()) return cmd_eigenmode(eig);
        if (c_lin->parsed()) return cmd_run(config_path, fpe::ExperimentKind::LinearEvolve);
        if (c_sim->parsed()) return cmd_run(config_path, fpe::ExperimentKind::Simulate);
        if (c_scan->parsed()) return cmd_scan(config_path);
        if (c_ineq->parsed()) return cmd_inequalities(ineq);
    } catch (const fpe::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const fpe::FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    } catch (const fpe::Error& e) {
        // invalid input: bad config values, infeasible resolution, no root
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
