#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

inline constexpr int kMaxEnergyLevel = 4;

/// Anisotropic energy hierarchy and pointwise bounds of a velocity field at
/// one time.
///
/// E[k]      = sum_{j=0..k} ||Lambda^{alpha j/2} d_z^{k-j} u||^2,   k = 0..K
/// Etilde[k] = sum_{j=0..k} ||Lambda^{alpha (j+1)/2} d_z^{k-j} u||^2 (the
///             dissipation paired with E[k], i.e. Etilde_{k+1})
/// Y[k]      = E[k] + nu_h * dissipation_integral[k]
struct EnergyReport {
    double t = 0.0;
    std::vector<double> E;
    std::vector<double> Etilde;
    double omega_inf = 0.0;
    double w_inf = 0.0;
    double u_inf = 0.0;
    /// ||Lambda^{(3-alpha)/2} d_z u||^2
    double bkm_integrand = 0.0;
    std::vector<double> Y;
    /// Trapezoid running integrals of Etilde[k] since the first report.
    std::vector<double> dissipation_integral;
    double nu_h = 0.0;

    int levels() const { return static_cast<int>(E.size()) - 1; }
    /// E0 + 2 nu_h int_0^t Etilde_1, constant along exact solutions.
    double energy_balance() const;
};

/// Fills every field of the report. When `running` is given, the dissipation
/// integrals continue from it by the trapezoid rule. Throws ResolutionError
/// for K outside [0, kMaxEnergyLevel] or beyond the vertical stencil.
EnergyReport energy_report(const SpectralField& u, int K, double t, const EnergyReport* running = nullptr);
EnergyReport energy_report(const Field& u, int K, double t, const EnergyReport* running = nullptr);

struct Trajectory;

struct MaxPrincipleResult {
    double overshoot = 0.0;
    bool pass = false;
};

/// max_t ||omega(t)||_inf / ||omega_0||_inf, passing when <= 1 + 1e-3.
MaxPrincipleResult max_principle_check(const Trajectory& traj, double tolerance = 1e-3);

/// int_0^T ||Lambda^{(3-alpha)/2} d_z u||^2 dt by the trapezoid rule.
double bkm_report(const Trajectory& traj);
/// Same integral restricted to sample indices [first, last].
double bkm_report(const Trajectory& traj, std::size_t first, std::size_t last);

/// Trapezoid rule on arbitrary sample times.
double trapezoid(std::span<const double> t, std::span<const double> f);
/// Piecewise-quadratic (Simpson-type) rule on arbitrary sample times; the
/// last interval is closed with a quadratic through the final three samples
/// when the interval count is odd.
double simpson_nonuniform(std::span<const double> t, std::span<const double> f);

}  // namespace fpe
