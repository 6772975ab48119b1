#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

/// Background shear U(z) sampled on nz uniform nodes with U', U'', U'''.
struct ShearProfile {
    int nz = 0;
    std::vector<double> U, U1, U2, U3;
    /// "tanh" for A tanh(L(z - 1/2)), "samples" when derivatives were
    /// obtained by finite differences.
    std::string tag = "samples";
    double L = 0.0;
    double amplitude = 1.0;

    double h() const { return 1.0 / (nz - 1); }
    double max_abs() const;

    /// A * tanh(L (z - 1/2)) with closed-form derivatives.
    static ShearProfile tanh_profile(int nz, double L, double amplitude = 1.0);
    /// Derivatives from fourth-order finite differences of the samples.
    static ShearProfile from_samples(std::vector<double> U);

    /// lambda * U, keeping the closed-form tag.
    ShearProfile scaled(double lambda) const;
    /// Same closed form resampled on a different grid. Throws ParameterError
    /// for sample-only profiles.
    ShearProfile resampled(int nz) const;
};

/// F(c) = integral_0^1 (U(z) - c)^{-2} dz by composite Simpson.
cplx dispersion_F(const ShearProfile& U, cplx c);
/// F(i gamma); throws ParameterError unless gamma > 0.
cplx dispersion_F(const ShearProfile& U, double gamma);

struct GammaBracket {
    double lo = 1e-4;
    /// Non-positive means max|U|.
    double hi = 0.0;
};

/// Outcome of the dispersion root search. For profiles odd about z = 1/2
/// the root is c = i gamma; otherwise a complex Newton refinement also
/// returns a phase speed Re c.
struct DispersionRoot {
    double gamma = 0.0;
    double phase_speed = 0.0;
    cplx F{};
    int iterations = 0;
    bool symmetry_violation = false;
};

/// Locates gamma with Re F(i gamma) = 0. The bracket is scanned on a
/// logarithmic grid from hi downward and the largest-gamma sign change is
/// refined by Brent's method; under-resolved quadrature produces spurious
/// sign changes at small gamma, which this ordering skips. Throws NoRootError
/// when Re F keeps one sign.
DispersionRoot solve_dispersion(const ShearProfile& U, GammaBracket bracket = {}, double tol = 1e-12);
double find_gamma(const ShearProfile& U, GammaBracket bracket = {}, double tol = 1e-12);

/// chi(z) = (U - c) * integral_0^z (U - c)^{-2}; chi(0) = 0.
std::vector<cplx> build_chi(const ShearProfile& U, cplx c);
std::vector<cplx> build_chi(const ShearProfile& U, double gamma);
/// chi'' = U'' * integral_0^z (U - c)^{-2}, which follows from
/// differentiating chi twice.
std::vector<cplx> build_chi_zz(const ShearProfile& U, cplx c);

/// 2 pi gamma - (2 pi)^alpha nu_h n^{-(1 - alpha)}.
double beta_n(double gamma, double alpha, double nu_h, int n);

/// Max-norm of (n beta_n + 2 pi i n U + nu_h (2 pi n)^alpha) chi'' - 2 pi i n U'' chi
/// normalized by max |2 pi n U'' chi|; chi'' from repeated fourth-order
/// differences of the supplied chi.
double residual_orr_sommerfeld(const ShearProfile& U, double gamma, std::span<const cplx> chi, int n, double alpha,
                               double nu_h);

struct EigenSolution {
    double gamma = 0.0;
    std::vector<cplx> chi;
    std::vector<cplx> chi_zz;
    double alpha = 1.0;
    double nu_h = 0.0;
    std::map<int, double> beta;

    /// chi(1) and chi(0) relative to max |chi|.
    double boundary_defect() const;
};

EigenSolution make_eigensolution(const ShearProfile& U, double gamma, double alpha, double nu_h, int n_max);

enum class SuperpositionKind { Sobolev, Gevrey };

/// Stream-function data sum_n a_n Re(chi(z) e^{2 pi i n x}) built from the
/// unstable eigenfunction, together with its vorticity phi = psi_zz.
struct SuperpositionData {
    Field psi0;
    SpectralField psi0_hat;
    SpectralField phi0_hat;
    std::vector<int> modes;            // n for each term
    std::vector<double> coefficients;  // a_n
    std::vector<double> rates;         // n beta_n for n = 1..N
    double s = 0.0;

    /// sum_n a_n^2 n^{2s} e^{2 n beta_n t} / the same at t = 0.
    double predicted_growth(double t) const;
};

/// a_n = n^{-(s+1)} (Sobolev) or exp(-n^{1/sigma}) (Gevrey). Requires
/// N <= nx/3 and U sampled on grid.nz nodes.
SuperpositionData superposition_data(const GridSpec& grid, const ShearProfile& U, double gamma, double s, int N,
                                     SuperpositionKind kind = SuperpositionKind::Sobolev, double sigma = 2.0);

/// Single eigenmode amplitude * Re(chi e^{2 pi i n x}) as psi and phi.
SuperpositionData eigenmode_data(const GridSpec& grid, const ShearProfile& U, double gamma, int n,
                                 double amplitude = 1.0);

/// Truncated sum over k != 0 of |k|^{2s} |psi_k|^2 (both signs of k),
/// integrated in z.
double hs_x_norm_sq(const SpectralField& psi, double s);

}  // namespace fpe
