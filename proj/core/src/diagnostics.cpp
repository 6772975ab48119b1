#include "fpe/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "fpe/errors.hpp"
#include "fpe/evolution.hpp"
#include "fpe/norms.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

namespace fpe {

double EnergyReport::energy_balance() const {
    if (E.empty()) return 0.0;
    return E[0] + 2.0 * nu_h * dissipation_integral[0];
}

EnergyReport energy_report(const SpectralField& u, int K, double t, const EnergyReport* running) {
    const auto& g = u.grid();
    if (K < 0 || K > kMaxEnergyLevel)
        throw ResolutionError("energy_report: K=" + std::to_string(K) + " outside [0, " +
                              std::to_string(kMaxEnergyLevel) + "]");
    if (K > g.nz - 5) throw ResolutionError("energy_report: K infeasible for nz=" + std::to_string(g.nz));

    const double a = g.alpha / 2.0;
    // derivs[m] = d_z^m u
    std::vector<SpectralField> derivs;
    derivs.reserve(K + 1);
    derivs.push_back(u);
    const int need = std::max(K, 1);
    for (int m = 1; m <= need; ++m) derivs.push_back(dz(derivs.back(), 1));

    EnergyReport r;
    r.t = t;
    r.nu_h = g.nu_h;
    r.E.assign(K + 1, 0.0);
    r.Etilde.assign(K + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
        for (int j = 0; j <= k; ++j) {
            r.E[k] += frac_norm_sq(derivs[k - j], a * j);
            r.Etilde[k] += frac_norm_sq(derivs[k - j], a * (j + 1));
        }
    }
    r.bkm_integrand = frac_norm_sq(derivs[1], (3.0 - g.alpha) / 2.0);
    r.u_inf = x_inverse(u).max_abs();
    r.omega_inf = x_inverse(derivs[1]).max_abs();
    r.w_inf = x_inverse(diagnose_w(u)).max_abs();

    r.dissipation_integral.assign(K + 1, 0.0);
    if (running) {
        if (running->levels() != K) throw ParameterError("energy_report: running report has a different K");
        const double dt = t - running->t;
        for (int k = 0; k <= K; ++k)
            r.dissipation_integral[k] =
                running->dissipation_integral[k] + 0.5 * dt * (running->Etilde[k] + r.Etilde[k]);
    }
    r.Y.resize(K + 1);
    for (int k = 0; k <= K; ++k) r.Y[k] = r.E[k] + g.nu_h * r.dissipation_integral[k];
    return r;
}

EnergyReport energy_report(const Field& u, int K, double t, const EnergyReport* running) {
    return energy_report(x_forward(u), K, t, running);
}

MaxPrincipleResult max_principle_check(const Trajectory& traj, double tolerance) {
    MaxPrincipleResult res;
    if (traj.reports.empty()) return res;
    const double w0 = traj.reports.front().omega_inf;
    double peak = 0.0;
    for (const auto& r : traj.reports) peak = std::max(peak, r.omega_inf);
    res.overshoot = w0 > 0.0 ? peak / w0 : (peak > 0.0 ? INFINITY : 1.0);
    res.pass = res.overshoot <= 1.0 + tolerance;
    return res;
}

double bkm_report(const Trajectory& traj, std::size_t first, std::size_t last) {
    if (traj.reports.empty() || first >= last) return 0.0;
    last = std::min(last, traj.reports.size() - 1);
    double total = 0.0;
    for (std::size_t i = first; i < last; ++i)
        total += 0.5 * (traj.times[i + 1] - traj.times[i]) *
                 (traj.reports[i].bkm_integrand + traj.reports[i + 1].bkm_integrand);
    return total;
}

double bkm_report(const Trajectory& traj) {
    return traj.reports.empty() ? 0.0 : bkm_report(traj, 0, traj.reports.size() - 1);
}

double trapezoid(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) throw DimensionError("trapezoid: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < t.size(); ++i) s += 0.5 * (t[i + 1] - t[i]) * (f[i] + f[i + 1]);
    return s;
}

namespace {
// Integral over [t0, t2] of the quadratic through three points.
double quad_panel(double t0, double t1, double t2, double f0, double f1, double f2) {
    const double h0 = t1 - t0, h1 = t2 - t1, H = h0 + h1;
    return H / 6.0 * ((2.0 - h1 / h0) * f0 + H * H / (h0 * h1) * f1 + (2.0 - h0 / h1) * f2);
}
// Integral over [t1, t2] of the quadratic through (t0,t1,t2).
double quad_tail(double t0, double t1, double t2, double f0, double f1, double f2) {
    const double h0 = t1 - t0, h1 = t2 - t1;
    const double a = h1 * (2.0 * h1 + 3.0 * h0) / (6.0 * (h0 + h1));
    const double b = h1 * (h1 + 3.0 * h0) / (6.0 * h0);
    const double c = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    return a * f2 + b * f1 - c * f0;
}
}  // namespace

double simpson_nonuniform(std::span<const double> t, std::span<const double> f) {
    if (t.size() != f.size()) throw DimensionError("simpson_nonuniform: length mismatch");
    const std::size_t n = t.size();
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
    double s = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2) s += quad_panel(t[i], t[i + 1], t[i + 2], f[i], f[i + 1], f[i + 2]);
    if (i + 1 < n) s += quad_tail(t[i - 1], t[i], t[i + 1], f[i - 1], f[i], f[i + 1]);
    return s;
}

}  // namespace fpe
