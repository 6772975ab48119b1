#include "fpe/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "fpe/errors.hpp"
#include "fpe/norms.hpp"
#include "fpe/rng.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

namespace fpe {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void scale_modes(SpectralField& F, const std::vector<double>& factor) {
    for (int j = 0; j < F.grid().nz; ++j) {
        auto r = F.row(j);
        for (int k = 0; k < F.nk(); ++k) r[k] *= factor[k];
    }
}

double state_norm(const SpectralField& F) { return std::sqrt(frac_norm_sq(F, 0.0)); }

std::vector<double> mode_norms(const SpectralField& F) {
    std::vector<double> out(F.nk());
    const double h = F.grid().dz();
    for (int k = 0; k < F.nk(); ++k) {
        const auto m = F.mode(k);
        out[k] = profile_l2(m, h);
    }
    return out;
}
}  // namespace

std::string_view to_string(RunMode m) { return m == RunMode::LinearPsi ? "linear_psi" : "nonlinear"; }

void RunConfig::validate() const {
    grid.validate();
    if (!(t_end > 0.0)) throw ParameterError("t_end must be > 0");
    if (dt && !(*dt > 0.0)) throw ParameterError("dt must be > 0");
    if (!(dt_max > 0.0)) throw ParameterError("dt_max must be > 0");
    if (sample_every < 1) throw ParameterError("sample_every must be >= 1");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ParameterError("cfl_safety must lie in (0,1]");
    if (K < 0 || K > kMaxEnergyLevel) throw ParameterError("K must lie in [0, 4]");
    if (!(growth_limit > 1.0)) throw ParameterError("growth_limit must be > 1");
    if (mode == RunMode::LinearPsi && !shear) throw ParameterError("LinearPsi runs require a shear profile");
    if (shear && shear->nz != grid.nz) throw DimensionError("shear profile sampled on a different nz than the grid");
    const bool needs_shear =
        initial.kind == InitialData::Kind::Eigenmode || initial.kind == InitialData::Kind::Superposition;
    if (needs_shear && !shear) throw ParameterError("eigenmode/superposition initial data require a shear profile");
}

std::vector<double> Trajectory::probe_series(int k) const {
    std::vector<double> out;
    out.reserve(probes.size());
    for (const auto& p : probes) out.push_back(p.at(k));
    return out;
}

// ------------------------------------------------------------ linear

LinearPsiOperator::LinearPsiOperator(const GridSpec& grid, ShearProfile shear)
    : grid_(grid), shear_(std::move(shear)), poisson_(grid.nz) {
    if (shear_.nz != grid_.nz) throw DimensionError("LinearPsiOperator: shear nz differs from grid nz");
}

SpectralField LinearPsiOperator::stream_function(const SpectralField& phi) const {
    require_same_shape(grid_, phi.grid(), "LinearPsiOperator::stream_function");
    SpectralField psi(phi.grid());
    for (int k = 0; k < phi.nk(); ++k) {
        const auto m = phi.mode(k);
        psi.set_mode(k, poisson_.solve(std::span<const cplx>(m)));
    }
    return psi;
}

SpectralField LinearPsiOperator::apply(const SpectralField& phi, bool include_dissipation) const {
    require_same_shape(grid_, phi.grid(), "LinearPsiOperator::apply");
    SpectralField out(phi.grid());
    const int ny = grid_.nx / 2;
    for (int k = 1; k < phi.nk(); ++k) {
        const auto p = phi.mode(k);
        const double damp = include_dissipation ? grid_.dissipation_rate(k) : 0.0;
        std::vector<cplx> t(grid_.nz);
        if (k == ny) {
            for (int j = 0; j < grid_.nz; ++j) t[j] = -damp * p[j];
        } else {
            const auto psi = poisson_.solve(std::span<const cplx>(p));
            const cplx ik(0.0, kTwoPi * k);
            for (int j = 0; j < grid_.nz; ++j)
                t[j] = -ik * shear_.U[j] * p[j] + ik * shear_.U2[j] * psi[j] - damp * p[j];
        }
        out.set_mode(k, t);
    }
    return out;
}

SpectralField linear_tendency(const SpectralField& phi, const ShearProfile& U, const GridSpec& grid,
                              bool include_dissipation) {
    return LinearPsiOperator(grid, U).apply(phi, include_dissipation);
}

// --------------------------------------------------------- nonlinear

SpectralField nonlinear_tendency(const SpectralField& u_hat, bool dealias_products) {
    SpectralField U = u_hat;
    if (dealias_products) dealias(U);
    const Field u = x_inverse(U);
    const Field ux = x_inverse(dx(U));
    const Field uz = x_inverse(dz(U, 1));
    const Field w = x_inverse(diagnose_w(U));
    Field N(u.grid());
    auto n = N.values();
    auto a = u.values(), b = ux.values(), c = w.values(), d = uz.values();
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = a[i] * b[i] + c[i] * d[i];
    if (!N.all_finite()) throw Error("nonlinear_tendency: non-finite product (blowup)");
    SpectralField Nh = x_forward(N);
    if (dealias_products) dealias(Nh);
    SpectralField out = project_H(Nh);
    out *= -1.0;
    return out;
}

Field nonlinear_tendency(const Field& u, bool dealias_products) {
    return x_inverse(nonlinear_tendency(x_forward(u), dealias_products));
}

// ------------------------------------------------------------ stepper

SpectralField ifrk4_step(const SpectralField& u, double dt, const Tendency& N) {
    if (!(dt > 0.0)) throw ParameterError("ifrk4_step: dt must be > 0");
    const auto& g = u.grid();
    std::vector<double> e1(u.nk()), e2(u.nk());
    for (int k = 0; k < u.nk(); ++k) {
        e1[k] = std::exp(-0.5 * dt * g.dissipation_rate(k));
        e2[k] = e1[k] * e1[k];
    }

    const SpectralField k1 = N(u);
    SpectralField a = u;
    a.axpy(0.5 * dt, k1);
    scale_modes(a, e1);
    const SpectralField k2 = N(a);

    SpectralField b = u;
    scale_modes(b, e1);
    b.axpy(0.5 * dt, k2);
    const SpectralField k3 = N(b);

    SpectralField c = u;
    scale_modes(c, e2);
    SpectralField k3e = k3;
    scale_modes(k3e, e1);
    c.axpy(dt, k3e);
    const SpectralField k4 = N(c);

    SpectralField out = u;
    scale_modes(out, e2);
    SpectralField acc = k1;
    scale_modes(acc, e2);
    SpectralField mid = k2;
    mid += k3;
    scale_modes(mid, e1);
    acc.axpy(2.0, mid);
    acc += k4;
    out.axpy(dt / 6.0, acc);
    return out;
}

// ------------------------------------------------------- initial data

SpectralField initial_state(const RunConfig& cfg) {
    cfg.validate();
    const auto& g = cfg.grid;
    const auto& init = cfg.initial;
    const bool linear = cfg.mode == RunMode::LinearPsi;
    SpectralField state(g);

    auto eigen_gamma = [&]() { return find_gamma(*cfg.shear); };

    switch (init.kind) {
        case InitialData::Kind::Zero:
            break;
        case InitialData::Kind::Mode: {
            if (init.n < 0 || init.n >= g.nx / 2) throw ResolutionError("initial mode n out of range");
            if (init.m < 1) throw ParameterError("initial vertical mode m must be >= 1");
            const double mpi = init.m * std::numbers::pi;
            for (int j = 0; j < g.nz; ++j) {
                const double z = g.z(j);
                if (linear) {
                    // psi = A cos(2 pi n x) sin(m pi z), phi = -(m pi)^2 psi
                    const double c = init.n == 0 ? 1.0 : 0.5;
                    state(j, init.n) = -mpi * mpi * c * init.amplitude * std::sin(mpi * z);
                } else {
                    // u = A sin(2 pi n x) cos(m pi z)
                    state(j, init.n) = init.n == 0 ? cplx{} : cplx(0.0, -0.5 * init.amplitude * std::cos(mpi * z));
                }
            }
            break;
        }
        case InitialData::Kind::Random: {
            if (init.max_k < 0 || init.max_k > g.dealias_cutoff())
                throw ResolutionError("random initial data: max_k exceeds the dealiased band");
            SeededRng rng(init.seed);
            Field f(g);
            for (int k = linear ? 1 : 0; k <= init.max_k; ++k) {
                for (int m = 1; m <= init.max_m; ++m) {
                    const double a = rng.uniform(-1.0, 1.0) / (1.0 + k * k + m * m);
                    const double b = k == 0 ? 0.0 : rng.uniform(-1.0, 1.0) / (1.0 + k * k + m * m);
                    for (int j = 0; j < g.nz; ++j) {
                        const double zf = linear ? std::sin(m * std::numbers::pi * g.z(j))
                                                 : std::cos(m * std::numbers::pi * g.z(j));
                        auto r = f.row(j);
                        for (int i = 0; i < g.nx; ++i)
                            r[i] += zf * (a * std::cos(kTwoPi * k * g.x(i)) + b * std::sin(kTwoPi * k * g.x(i)));
                    }
                }
            }
            const double peak = f.max_abs();
            if (peak > 0.0) f *= init.amplitude / peak;
            state = x_forward(f);
            // In LinearPsi mode f is psi; the state is its vorticity psi_zz.
            if (linear) state = dz(state, 2);
            break;
        }
        case InitialData::Kind::Eigenmode:
        case InitialData::Kind::Superposition: {
            const double gamma = eigen_gamma();
            const auto data = init.kind == InitialData::Kind::Eigenmode
                                  ? eigenmode_data(g, *cfg.shear, gamma, init.n, init.amplitude)
                                  : superposition_data(g, *cfg.shear, gamma, init.s, init.N, init.weights, init.sigma);
            if (linear) {
                state = data.phi0_hat;
                if (init.kind == InitialData::Kind::Superposition) state *= init.amplitude;
            } else {
                state = dz(data.psi0_hat, 1);
                if (init.kind == InitialData::Kind::Superposition) state *= init.amplitude;
            }
            break;
        }
    }

    if (!linear) {
        if (cfg.shear)
            for (int j = 0; j < g.nz; ++j) state(j, 0) += cfg.shear->U[j];
        state = project_H(state);
        if (cfg.dealias) dealias(state);
    }
    return state;
}

// ---------------------------------------------------------------- run

Trajectory run(const RunConfig& cfg, const Observer& observer) { return run(cfg, initial_state(cfg), observer); }

Trajectory run(const RunConfig& cfg, const SpectralField& initial, const Observer& observer) {
    cfg.validate();
    require_same_shape(cfg.grid, initial.grid(), "run");
    const auto& g = cfg.grid;
    const bool linear = cfg.mode == RunMode::LinearPsi;

    std::optional<LinearPsiOperator> op;
    Tendency tendency;
    if (linear) {
        op.emplace(g, *cfg.shear);
        tendency = [&op](const SpectralField& phi) { return op->apply(phi, false); };
    } else {
        const bool dl = cfg.dealias;
        tendency = [dl](const SpectralField& u) { return nonlinear_tendency(u, dl); };
    }

    Trajectory traj;
    traj.mode = cfg.mode;

    auto velocity = [&](const SpectralField& s) { return linear ? dz(op->stream_function(s), 1) : s; };
    auto sample = [&](double t, const SpectralField& s) -> bool {
        const SpectralField u = velocity(s);
        const EnergyReport* prev = traj.reports.empty() ? nullptr : &traj.reports.back();
        EnergyReport r = energy_report(u, cfg.K, t, prev);
        bool finite = std::isfinite(r.omega_inf) && std::isfinite(r.u_inf) && std::isfinite(r.w_inf);
        for (double v : r.E) finite = finite && std::isfinite(v);
        for (double v : r.Etilde) finite = finite && std::isfinite(v);
        if (!finite) return false;
        traj.times.push_back(t);
        traj.reports.push_back(std::move(r));
        traj.probes.push_back(mode_norms(linear ? op->stream_function(s) : s));
        return true;
    };

    auto choose_dt = [&](const SpectralField& s) {
        if (cfg.dt) return *cfg.dt;
        double umax = 0.0, wmax = 0.0;
        if (linear) {
            umax = cfg.shear->max_abs();
        } else {
            umax = x_inverse(s).max_abs();
            wmax = x_inverse(diagnose_w(s)).max_abs();
        }
        double dt = cfg.dt_max;
        if (umax > 0.0) dt = std::min(dt, cfg.cfl_safety * g.dx() / umax);
        if (wmax > 0.0) dt = std::min(dt, cfg.cfl_safety * g.dz() / wmax);
        return dt;
    };

    SpectralField state = initial;
    double t = 0.0;
    const double norm0 = state_norm(state);
    if (!sample(t, state)) {
        traj.blowup = true;
        traj.blowup_reason = "non-finite initial data";
        traj.final_state = state;
        return traj;
    }
    if (observer) observer(t, state);

    double dt = choose_dt(state);
    while (t < cfg.t_end) {
        if (!cfg.dt && traj.steps > 0 && traj.steps % 10 == 0) dt = choose_dt(state);
        double h = std::min(dt, cfg.t_end - t);
        const bool last = cfg.t_end - (t + h) <= 1e-12 * cfg.t_end;
        if (last) h = cfg.t_end - t;
        try {
            state = ifrk4_step(state, h, tendency);
        } catch (const Error& e) {
            traj.blowup = true;
            traj.blowup_reason = e.what();
            break;
        }
        t = last ? cfg.t_end : t + h;
        ++traj.steps;

        const double nrm = state_norm(state);
        if (!std::isfinite(nrm)) {
            traj.blowup = true;
            traj.blowup_reason = "non-finite state at t=" + std::to_string(t);
            break;
        }
        if (observer) observer(t, state);
        const bool runaway = norm0 > 0.0 && nrm > cfg.growth_limit * norm0;
        if (last || runaway || traj.steps % cfg.sample_every == 0) {
            if (!sample(t, state)) {
                traj.blowup = true;
                traj.blowup_reason = "non-finite diagnostics at t=" + std::to_string(t);
                break;
            }
        }
        if (runaway) {
            traj.blowup = true;
            traj.blowup_reason = "state norm exceeded growth_limit at t=" + std::to_string(t);
            break;
        }
        if (last) break;
    }
    traj.final_state = std::move(state);
    return traj;
}

// --------------------------------------------------------- growth fit

double fit_growth_rate(std::span<const double> times, std::span<const double> amplitudes, double t_begin,
                       double t_end) {
    if (times.size() != amplitudes.size()) throw FitError("fit_growth_rate: length mismatch");
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_begin || times[i] > t_end) continue;
        if (!(amplitudes[i] > 0.0)) throw FitError("fit_growth_rate: nonpositive amplitude at t=" +
                                                   std::to_string(times[i]));
        const double y = std::log(amplitudes[i]);
        st += times[i];
        sy += y;
        stt += times[i] * times[i];
        sty += times[i] * y;
        ++count;
    }
    if (count < 10) throw FitError("fit_growth_rate: need >= 10 samples in window, got " + std::to_string(count));
    const double n = count;
    const double denom = n * stt - st * st;
    if (denom <= 0.0) throw FitError("fit_growth_rate: degenerate time window");
    return (n * sty - st * sy) / denom;
}

// ---------------------------------------------------- criticality scan

std::optional<double> ScanTable::threshold(double nu) const {
    std::vector<const ScanCell*> row;
    for (const auto& c : cells)
        if (c.nu_h == nu) row.push_back(&c);
    std::sort(row.begin(), row.end(), [](auto* a, auto* b) { return a->lambda < b->lambda; });
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
        const double r0 = row[i]->rate, r1 = row[i + 1]->rate;
        if (r0 == 0.0) return row[i]->lambda;
        if ((r0 < 0.0) != (r1 < 0.0))
            return row[i]->lambda - r0 * (row[i + 1]->lambda - row[i]->lambda) / (r1 - r0);
    }
    return std::nullopt;
}

ScanTable criticality_scan(const RunConfig& base, std::span<const double> lambdas, std::span<const double> nus) {
    base.validate();
    if (base.grid.alpha != 1.0) throw ParameterError("criticality_scan: requires alpha = 1");
    if (base.initial.kind != InitialData::Kind::Eigenmode)
        throw ParameterError("criticality_scan: requires eigenmode initial data");
    ScanTable table;
    table.gamma = find_gamma(*base.shear);
    table.n = base.initial.n;
    for (double nu : nus) {
        for (double lambda : lambdas) {
            if (!(lambda > 0.0)) throw ParameterError("criticality_scan: lambda must be > 0");
            RunConfig cfg = base;
            cfg.mode = RunMode::LinearPsi;
            cfg.grid.nu_h = nu;
            cfg.shear = base.shear->scaled(lambda);
            const Trajectory traj = run(cfg);
            ScanCell cell;
            cell.lambda = lambda;
            cell.nu_h = nu;
            cell.blowup = traj.blowup;
            cell.rate = fit_growth_rate(traj.times, traj.probe_series(base.initial.n), 0.5 * traj.times.back(),
                                        traj.times.back());
            cell.grows = cell.rate > 0.0;
            table.cells.push_back(cell);
        }
    }
    return table;
}

}  // namespace fpe
