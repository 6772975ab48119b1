// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fpe/diagnostics.hpp"
#include "fpe/evolution.hpp"
#include "fpe/inequalities.hpp"
#include "fpe/io.hpp"
#include "fpe/norms.hpp"
#include "fpe/rng.hpp"
#include "fpe/shear.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

using namespace fpe;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

GridSpec grid(int nx, int nz, double alpha, double nu) {
    GridSpec g;
    g.nx = nx;
    g.nz = nz;
    g.alpha = alpha;
    g.nu_h = nu;
    return g;
}

// ---- 1: dispersion root and eigenpair -------------------------------------

// Independent oracle: plain Simpson sum and bisection on Re F.
double oracle_gamma(int nz) {
    const double h = 1.0 / (nz - 1);
    auto reF = [&](double g) {
        double s = 0.0;
        for (int j = 0; j < nz; ++j) {
            const double w = (j == 0 || j == nz - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
            const std::complex<double> d = std::tanh(20.0 * (j * h - 0.5)) - std::complex<double>(0.0, g);
            s += w * (1.0 / (d * d)).real();
        }
        return s * h / 3.0;
    };
    double lo = 0.5, hi = 1.0;
    const bool neg = reF(lo) < 0.0;
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (lo + hi);
        ((reF(m) < 0.0) == neg ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

Outcome criterion1() {
    const auto U = ShearProfile::tanh_profile(4097, 20.0);
    const double g = find_gamma(U);
    const double err = std::abs(g - oracle_gamma(4097));

    const auto U2 = ShearProfile::tanh_profile(2049, 20.0);
    const double g2 = find_gamma(U2);
    const auto chi = build_chi(U2, g2);
    double res = 0.0;
    for (int n : {1, 2, 4, 8})
        for (double alpha : {0.25, 0.5, 1.0}) res = std::max(res, residual_orr_sommerfeld(U2, g2, chi, n, alpha, 0.05));
    return {err <= 1e-10 && res <= 1e-6,
            fmt("gamma=%.15f |gamma-oracle|=%.2e (<=1e-10), OS residual=%.2e (<=1e-6)", g, err, res)};
}

// ---- 2: supercritical growth rates ----------------------------------------

Outcome criterion2() {
    const int nz = 513;
    const double nu = 0.05;
    const auto U = ShearProfile::tanh_profile(nz, 20.0);
    const double gam = find_gamma(U);
    double worst = 0.0;
    std::string where;
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (int n : {1, 2, 4, 8}) {
            RunConfig cfg;
            cfg.grid = grid(64, nz, alpha, nu);
            cfg.mode = RunMode::LinearPsi;
            cfg.shear = U;
            cfg.initial.kind = InitialData::Kind::Eigenmode;
            cfg.initial.n = n;
            cfg.K = 0;
            const double expect = n * beta_n(gam, alpha, nu, n);
            cfg.t_end = 8.0 / expect;
            const auto traj = run(cfg);
            if (traj.blowup) return {false, fmt("alpha=%.2f n=%d flagged blowup: %s", alpha, n, traj.blowup_reason.c_str())};
            const double rate = fit_growth_rate(traj.times, traj.probe_series(n), 0.5 * cfg.t_end, cfg.t_end);
            const double rel = std::abs(rate / expect - 1.0);
            if (rel > worst) {
                worst = rel;
                where = fmt("alpha=%.2f n=%d fitted %.6f vs n*beta_n %.6f", alpha, n, rate, expect);
            }
        }
    }
    return {worst <= 0.01, fmt("max relative error %.2e (<=1e-2) at %s", worst, where.c_str())};
}

// ---- 3: critical dichotomy ------------------------------------------------

Outcome criterion3() {
    const int nz = 513;
    const auto U = ShearProfile::tanh_profile(nz, 20.0);
    const double gam = find_gamma(U);
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    for (double nu : {0.05, 0.1, 0.2}) {
        RunConfig base;
        base.grid = grid(16, nz, 1.0, nu);
        base.mode = RunMode::LinearPsi;
        base.shear = U;
        base.initial.kind = InitialData::Kind::Eigenmode;
        base.initial.n = 1;
        base.t_end = 4.0;
        base.K = 0;
        std::vector<double> lambdas;
        for (int i = 0; i < 12; ++i) lambdas.push_back(nu / gam * (0.5 + 1.1 * i / 11.0));
        const std::vector<double> nus{nu};
        const auto table = criticality_scan(base, lambdas, nus);
        // the endpoints of the grid are the +-factor-2 checks: grows at 1.6, decays at 0.5
        const bool sides = !table.cells.front().grows && table.cells.back().grows;
        const auto lam = table.threshold(nu);
        if (!lam || !sides) {
            ok = false;
            detail += fmt("nu=%.2f: no sign change; ", nu);
            continue;
        }
        const double rel = std::abs(*lam * table.gamma - nu) / nu;
        worst = std::max(worst, rel);
        detail += fmt("nu=%.2f lambda*=%.5f (nu/gamma=%.5f) ", nu, *lam, nu / table.gamma);
    }
    return {ok && worst <= 0.05, fmt("max |lambda* gamma - nu|/nu = %.2e (<=5e-2); %s", worst, detail.c_str())};
}

// ---- 4, 5: energy identity and maximum principle --------------------------

struct SmallDataRun {
    Trajectory traj;
    double dt = 0.0;
};

const SmallDataRun& small_data_run() {
    static const SmallDataRun result = [] {
        RunConfig cfg;
        cfg.grid = grid(64, 129, 1.5, 0.1);
        cfg.initial.kind = InitialData::Kind::Random;
        cfg.initial.seed = 1;
        cfg.initial.amplitude = 0.02;
        cfg.initial.max_k = 4;
        cfg.initial.max_m = 3;
        cfg.t_end = 1.0;
        cfg.K = 1;
        const auto u0 = initial_state(cfg);
        // a quarter of the adaptive step the run would otherwise choose
        const double umax = x_inverse(u0).max_abs(), wmax = x_inverse(diagnose_w(u0)).max_abs();
        double dt = cfg.dt_max;
        if (umax > 0) dt = std::min(dt, cfg.cfl_safety * cfg.grid.dx() / umax);
        if (wmax > 0) dt = std::min(dt, cfg.cfl_safety * cfg.grid.dz() / wmax);
        cfg.dt = dt / 4.0;
        return SmallDataRun{run(cfg, u0), *cfg.dt};
    }();
    return result;
}

Outcome criterion4() {
    const auto& r = small_data_run();
    const auto& tr = r.traj;
    if (tr.blowup) return {false, "run flagged blowup"};
    const double nu = tr.reports.front().nu_h;
    const double e0 = tr.reports.front().E[0];
    std::vector<double> t, d;
    double worst = 0.0;
    for (std::size_t i = 0; i < tr.reports.size(); ++i) {
        t.push_back(tr.times[i]);
        d.push_back(tr.reports[i].Etilde[0]);
        const double integral = i == 0 ? 0.0 : simpson_nonuniform(t, d);
        worst = std::max(worst, std::abs(tr.reports[i].E[0] + 2.0 * nu * integral - e0));
    }
    const double rel = worst / e0;
    return {rel <= 1e-6, fmt("max |E0(t) + 2 nu int Et1 - E0(0)| / E0(0) = %.2e (<=1e-6), dt=%.4g, E0(1)/E0(0)=%.4f",
                             rel, r.dt, tr.reports.back().E[0] / e0)};
}

Outcome criterion5() {
    const auto res = max_principle_check(small_data_run().traj);
    return {res.pass, fmt("max_t ||omega||_inf / ||omega_0||_inf = %.12f (<=1+1e-3)", res.overshoot)};
}

// ---- 6: critical small-data trapping --------------------------------------

Outcome criterion6() {
    const double nu = 0.1;
    RunConfig cfg;
    cfg.grid = grid(64, 129, 1.0, nu);
    cfg.initial.kind = InitialData::Kind::Random;
    cfg.initial.seed = 6;
    cfg.initial.max_k = 4;
    cfg.initial.max_m = 3;
    cfg.t_end = 2.0;
    cfg.K = 2;
    auto u0 = initial_state(cfg);
    const auto r0 = energy_report(u0, 2, 0.0);
    const double size = std::max(r0.omega_inf, std::sqrt(r0.E[2]));
    u0 *= 0.01 * nu / size;
    const auto traj = run(cfg, u0);
    if (traj.blowup) return {false, "run flagged blowup"};
    const double e2 = traj.reports.front().E[2];
    double peak = 0.0;
    for (const auto& r : traj.reports) peak = std::max(peak, r.E[2] / e2);
    const auto& f = traj.reports.front();
    return {peak <= 1.0 + 1e-3,
            fmt("max_t E2(t)/E2(0) = %.12f (<=1+1e-3), ||omega0||_inf/nu=%.4f, sqrt(E2(0))/nu=%.4f", peak,
                f.omega_inf / nu, std::sqrt(e2) / nu)};
}

// ---- 7: Sobolev-norm growth of superposition data -------------------------

Outcome criterion7() {
    const int nz = 513, N = 8;
    const double s = 1.0, alpha = 0.5, nu = 0.05;
    RunConfig cfg;
    cfg.grid = grid(64, nz, alpha, nu);
    cfg.mode = RunMode::LinearPsi;
    cfg.shear = ShearProfile::tanh_profile(nz, 20.0);
    cfg.initial.kind = InitialData::Kind::Superposition;
    cfg.initial.s = s;
    cfg.initial.N = N;
    cfg.t_end = 1.0 / (2.0 * N);
    cfg.dt = cfg.t_end / 64.0;
    cfg.K = 0;
    const double gam = find_gamma(*cfg.shear);
    const auto data = superposition_data(cfg.grid, *cfg.shear, gam, s, N);
    LinearPsiOperator op(cfg.grid, *cfg.shear);
    double norm0 = -1.0, worst = 0.0, last_ratio = 0.0, last_pred = 0.0;
    const auto traj = run(cfg, [&](double t, const SpectralField& phi) {
        const double v = hs_x_norm_sq(op.stream_function(phi), s);
        if (norm0 < 0) norm0 = v;
        const double ratio = v / norm0, pred = data.predicted_growth(t);
        worst = std::max(worst, std::abs(ratio / pred - 1.0));
        last_ratio = ratio;
        last_pred = pred;
    });
    if (traj.blowup) return {false, "run flagged blowup"};
    return {worst <= 0.02, fmt("max relative mismatch %.2e (<=2e-2) over t in [0, %.4f]; final growth %.4f vs %.4f",
                               worst, cfg.t_end, last_ratio, last_pred)};
}

// ---- 8: scaling law -------------------------------------------------------

Outcome criterion8() {
    const auto U = ShearProfile::tanh_profile(2049, 20.0);
    const double g = find_gamma(U);
    double worst = 0.0;
    for (double lambda : {0.5, 2.0, 10.0})
        worst = std::max(worst, std::abs(find_gamma(U.scaled(lambda)) - lambda * g) / (lambda * g));
    return {worst <= 1e-9, fmt("max |gamma(lambda U) - lambda gamma(U)| / (lambda gamma) = %.2e (<=1e-9)", worst)};
}

// ---- 9: inequality lab regression -----------------------------------------

Outcome criterion9() {
    const auto stored = read_inequality_csv(std::string(FPE_FIXTURE_DIR) + "/inequalities_s0.5_nx128.csv");
    EnsembleSpec spec;
    spec.seeds = 1000;
    spec.s = 0.5;
    spec.nx = 128;
    spec.max_degree = 32;
    const auto fresh = inequality_ensemble(spec);
    int mismatched = 0;
    if (stored.size() != fresh.size()) return {false, fmt("fixture has %zu rows, expected 1000", stored.size())};
    for (std::size_t i = 0; i < fresh.size(); ++i)
        if (fresh[i].seed != stored[i].seed || fresh[i].leibniz != stored[i].leibniz ||
            fresh[i].borderline != stored[i].borderline)
            ++mismatched;
    auto fine = spec;
    fine.nx = 256;
    const auto m1 = ensemble_max(fresh), m2 = ensemble_max(inequality_ensemble(fine));
    const double dl = std::abs(m2.leibniz - m1.leibniz) / m1.leibniz;
    const double db = std::abs(m2.borderline - m1.borderline) / m1.borderline;
    return {mismatched == 0 && dl <= 0.1 && db <= 0.1,
            fmt("%d/1000 seeds differ from fixture; max leibniz %.6f drift %.2e, max borderline %.6f drift %.2e (<=0.1)",
                mismatched, m1.leibniz, dl, m1.borderline, db)};
}

// ---- 10: operator suite ---------------------------------------------------

Field random_trig_field(const GridSpec& g, std::uint64_t seed) {
    SeededRng rng(seed);
    const int kmax = std::max(1, g.nx / 2 - 1);
    std::vector<double> a(kmax + 1), b(kmax + 1), c(kmax + 1);
    for (int k = 0; k <= kmax; ++k) a[k] = rng.uniform(-1, 1), b[k] = rng.uniform(-1, 1), c[k] = rng.uniform(0, 3);
    return Field::from_function(g, [&](double x, double z) {
        double v = 0.0;
        for (int k = 0; k <= kmax; ++k)
            v += std::cos(c[k] * z) * (a[k] * std::cos(2 * kPi * k * x) + b[k] * std::sin(2 * kPi * k * x));
        return v;
    });
}

double rel_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m / std::max(b.max_abs(), 1e-300);
}

Outcome criterion10() {
    double rt = 0, pars = 0, add = 0, adj = 0, hh = 0;
    std::uint64_t seed = 100;
    for (int nx : {8, 32, 64, 256}) {
        for (int nz : {5, 33, 129}) {
            for (auto scale : {SymbolScale::TwoPi, SymbolScale::One}) {
                auto g = grid(nx, nz, 1.0, 0.0);
                g.symbol_scale = scale;
                const Field f = random_trig_field(g, seed++), h = random_trig_field(g, seed++);
                rt = std::max(rt, rel_diff(x_inverse(x_forward(f)), f));
                const double phys = inner(f, f), spec = frac_norm_sq(x_forward(f), 0.0);
                pars = std::max(pars, std::abs(phys - spec) / phys);
                const Field l1 = frac_laplacian_h(frac_laplacian_h(f, 0.4), 0.6), l2 = frac_laplacian_h(f, 1.0);
                add = std::max(add, rel_diff(l1, l2));
                const double left = inner(frac_laplacian_h(f, 0.7), h), right = inner(f, frac_laplacian_h(h, 0.7));
                adj = std::max(adj, std::abs(left - right) / std::max(std::abs(left), 1e-300));
                // H o H = -(f - x-mean) on the non-Nyquist band
                SpectralField F = x_forward(f);
                for (int j = 0; j < nz; ++j) F(j, nx / 2) = 0.0;
                const Field fb = x_inverse(F);
                SpectralField M = F;
                for (int j = 0; j < nz; ++j) M(j, 0) = 0.0;
                Field expect = x_inverse(M);
                expect *= -1.0;
                hh = std::max(hh, rel_diff(hilbert_h(hilbert_h(fb)), expect));
            }
        }
    }
    const auto g = grid(32, 257, 1.0, 0.0);
    const Field u =
        Field::from_function(g, [](double x, double z) { return std::sin(2 * kPi * x) * std::cos(kPi * z); });
    const auto pr = poincare_ratios(u);
    const double pz = std::abs(pr.z_ratio - 1.0 / kPi), pw = std::abs(pr.w_ratio - 1.0 / kPi);
    const bool ok = rt <= 1e-12 && pars <= 1e-12 && add <= 1e-10 && adj <= 1e-11 && hh <= 1e-12 && pz <= 1e-6 &&
                    pw <= 1e-6;
    return {ok, fmt("round-trip %.1e, Parseval %.1e (<=1e-12); additivity %.1e (<=1e-10); self-adjoint %.1e "
                    "(<=1e-11); HoH %.1e (<=1e-12); Poincare |z-1/pi| %.1e, |w-1/pi| %.1e (<=1e-6)",
                    rt, pars, add, adj, hh, pz, pw)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> check;
    };
    const std::vector<Criterion> criteria = {
        {1, "dispersion root and eigenpair self-consistency", criterion1},
        {2, "supercritical growth rates", criterion2},
        {3, "critical dichotomy threshold", criterion3},
        {4, "energy identity", criterion4},
        {5, "maximum principle", criterion5},
        {6, "critical small-data trapping", criterion6},
        {7, "Sobolev-norm growth of superposition data", criterion7},
        {8, "gamma scaling law", criterion8},
        {9, "inequality lab regression", criterion9},
        {10, "operator unit suite", criterion10},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  %2d  %-46s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
