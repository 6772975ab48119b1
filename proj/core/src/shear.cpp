#include "fpe/shear.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "fpe/errors.hpp"
#include "fpe/norms.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

namespace fpe {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<cplx> inverse_square(const ShearProfile& U, cplx c) {
    std::vector<cplx> f(U.nz);
    for (int j = 0; j < U.nz; ++j) {
        const cplx d = U.U[j] - c;
        f[j] = 1.0 / (d * d);
    }
    return f;
}

// Brent's method on a real function with f(a) f(b) <= 0.
template <typename F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol, int& iterations) {
    if (std::abs(fa) < std::abs(fb)) {
        std::swap(a, b);
        std::swap(fa, fb);
    }
    double c = a, fc = fa, d = b - a;
    bool bisected = true;
    for (iterations = 0; iterations < 200; ++iterations) {
        if (fb == 0.0 || std::abs(b - a) <= xtol) return b;
        double s;
        if (fa != fc && fb != fc) {
            s = a * fb * fc / ((fa - fb) * (fa - fc)) + b * fa * fc / ((fb - fa) * (fb - fc)) +
                c * fa * fb / ((fc - fa) * (fc - fb));
        } else {
            s = b - fb * (b - a) / (fb - fa);
        }
        const double lo = std::min((3.0 * a + b) / 4.0, b), hi = std::max((3.0 * a + b) / 4.0, b);
        const bool reject = !(s > lo && s < hi) || (bisected && std::abs(s - b) >= std::abs(b - c) / 2.0) ||
                            (!bisected && std::abs(s - b) >= std::abs(c - d) / 2.0) ||
                            (bisected && std::abs(b - c) < xtol) || (!bisected && std::abs(c - d) < xtol);
        if (reject) {
            s = 0.5 * (a + b);
            bisected = true;
        } else {
            bisected = false;
        }
        const double fs = f(s);
        d = c;
        c = b;
        fc = fb;
        if (fa * fs < 0.0) {
            b = s;
            fb = fs;
        } else {
            a = s;
            fa = fs;
        }
        if (std::abs(fa) < std::abs(fb)) {
            std::swap(a, b);
            std::swap(fa, fb);
        }
    }
    return b;
}
}  // namespace

double ShearProfile::max_abs() const {
    double m = 0.0;
    for (double v : U) m = std::max(m, std::abs(v));
    return m;
}

ShearProfile ShearProfile::tanh_profile(int nz, double L, double amplitude) {
    if (nz < 5 || nz % 2 == 0) throw ParameterError("tanh_profile: nz must be odd and >= 5");
    if (!(L > 0.0)) throw ParameterError("tanh_profile: L must be positive");
    ShearProfile p;
    p.nz = nz;
    p.tag = "tanh";
    p.L = L;
    p.amplitude = amplitude;
    p.U.resize(nz);
    p.U1.resize(nz);
    p.U2.resize(nz);
    p.U3.resize(nz);
    const double h = p.h();
    for (int j = 0; j < nz; ++j) {
        const double t = std::tanh(L * (j * h - 0.5));
        const double s2 = 1.0 - t * t;
        p.U[j] = amplitude * t;
        p.U1[j] = amplitude * L * s2;
        p.U2[j] = -2.0 * amplitude * L * L * t * s2;
        p.U3[j] = -2.0 * amplitude * L * L * L * s2 * (1.0 - 3.0 * t * t);
    }
    return p;
}

ShearProfile ShearProfile::from_samples(std::vector<double> U) {
    const int nz = static_cast<int>(U.size());
    if (nz < 5 || nz % 2 == 0) throw ParameterError("from_samples: need an odd number >= 5 of samples");
    ShearProfile p;
    p.nz = nz;
    p.U = std::move(U);
    const double h = p.h();
    p.U1 = column::derivative(std::span<const double>(p.U), h);
    p.U2 = column::derivative(std::span<const double>(p.U1), h);
    p.U3 = column::derivative(std::span<const double>(p.U2), h);
    return p;
}

ShearProfile ShearProfile::scaled(double lambda) const {
    ShearProfile p = *this;
    for (auto* v : {&p.U, &p.U1, &p.U2, &p.U3})
        for (double& x : *v) x *= lambda;
    p.amplitude *= lambda;
    return p;
}

ShearProfile ShearProfile::resampled(int nz_new) const {
    if (tag != "tanh") throw ParameterError("resampled: only closed-form profiles can be resampled");
    return tanh_profile(nz_new, L, amplitude);
}

cplx dispersion_F(const ShearProfile& U, cplx c) {
    const auto f = inverse_square(U, c);
    return column::integral(std::span<const cplx>(f), U.h());
}

cplx dispersion_F(const ShearProfile& U, double gamma) {
    if (!(gamma > 0.0)) throw ParameterError("dispersion_F: gamma must be > 0");
    return dispersion_F(U, cplx(0.0, gamma));
}

DispersionRoot solve_dispersion(const ShearProfile& U, GammaBracket bracket, double tol) {
    const double hi = bracket.hi > 0.0 ? bracket.hi : U.max_abs();
    const double lo = bracket.lo;
    if (!(lo > 0.0) || !(hi > lo)) throw ParameterError("solve_dispersion: invalid bracket");

    auto reF = [&](double g) { return dispersion_F(U, g).real(); };

    constexpr int kScan = 96;
    double b = hi, fb = reF(hi);
    double a = b, fa = fb;
    bool found = fb == 0.0;
    const double ratio = std::pow(lo / hi, 1.0 / kScan);
    for (int i = 1; i <= kScan && !found; ++i) {
        a = i == kScan ? lo : hi * std::pow(ratio, i);
        fa = reF(a);
        if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
            found = true;
            break;
        }
        b = a;
        fb = fa;
    }
    if (!found)
        throw NoRootError("solve_dispersion: Re F(i gamma) has no sign change on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");

    DispersionRoot root;
    const double xtol = std::max(tol * 1e-3, 4.0 * std::numeric_limits<double>::epsilon() * hi);
    root.gamma = fb == 0.0 ? b : brent(reF, a, b, fa, fb, xtol, root.iterations);
    root.F = dispersion_F(U, root.gamma);

    // Odd profiles make F real; a persistent imaginary part means the root
    // carries a phase speed and is refined as a complex zero of F(c).
    double scale = 0.0;
    for (double v : U.U) scale += 1.0 / (v * v + root.gamma * root.gamma);
    scale /= U.nz;
    if (std::abs(root.F.imag()) > 1e-10 * scale) {
        root.symmetry_violation = true;
        std::clog << "warning: shear profile is not odd about z=1/2 (|Im F| = " << std::abs(root.F.imag())
                  << "); falling back to complex Newton\n";
        cplx c(0.0, root.gamma);
        for (int it = 0; it < 100; ++it) {
            const cplx F = dispersion_F(U, c);
            std::vector<cplx> cube(U.nz);
            for (int j = 0; j < U.nz; ++j) {
                const cplx d = U.U[j] - c;
                cube[j] = 2.0 / (d * d * d);
            }
            const cplx dF = column::integral(std::span<const cplx>(cube), U.h());
            const cplx step = F / dF;
            c -= step;
            ++root.iterations;
            if (std::abs(step) <= tol * std::max(1.0, std::abs(c))) break;
        }
        if (!(c.imag() > 0.0)) throw NoRootError("solve_dispersion: Newton fallback left the upper half plane");
        // Unstable roots lie in Howard's semicircle over the range of U.
        const auto [umin, umax] = std::minmax_element(U.U.begin(), U.U.end());
        const double mid = 0.5 * (*umin + *umax), radius = 0.5 * (*umax - *umin);
        if (!(std::abs(c - mid) <= radius * (1.0 + 1e-9)) || !(std::abs(dispersion_F(U, c)) <= 1e-8 * scale))
            throw NoRootError("solve_dispersion: F(c) has no zero with positive imaginary part");
        root.gamma = c.imag();
        root.phase_speed = c.real();
        root.F = dispersion_F(U, c);
    }
    return root;
}

double find_gamma(const ShearProfile& U, GammaBracket bracket, double tol) {
    return solve_dispersion(U, bracket, tol).gamma;
}

std::vector<cplx> build_chi(const ShearProfile& U, cplx c) {
    const auto f = inverse_square(U, c);
    auto G = column::cumulative_integral(std::span<const cplx>(f), U.h());
    for (int j = 0; j < U.nz; ++j) G[j] *= (U.U[j] - c);
    return G;
}

std::vector<cplx> build_chi(const ShearProfile& U, double gamma) { return build_chi(U, cplx(0.0, gamma)); }

std::vector<cplx> build_chi_zz(const ShearProfile& U, cplx c) {
    const auto f = inverse_square(U, c);
    auto G = column::cumulative_integral(std::span<const cplx>(f), U.h());
    for (int j = 0; j < U.nz; ++j) G[j] *= U.U2[j];
    return G;
}

double beta_n(double gamma, double alpha, double nu_h, int n) {
    if (n < 1) throw ParameterError("beta_n: n must be >= 1");
    return kTwoPi * gamma - std::pow(kTwoPi, alpha) * nu_h * std::pow(static_cast<double>(n), alpha - 1.0);
}

double residual_orr_sommerfeld(const ShearProfile& U, double gamma, std::span<const cplx> chi, int n, double alpha,
                               double nu_h) {
    if (chi.size() != static_cast<std::size_t>(U.nz)) throw DimensionError("residual_orr_sommerfeld: chi length");
    const double h = U.h();
    const auto d1 = column::derivative(chi, h);
    const auto d2 = column::derivative(std::span<const cplx>(d1), h);
    const double b = beta_n(gamma, alpha, nu_h, n);
    const double diss = nu_h * std::pow(kTwoPi * n, alpha);
    const cplx i2pin(0.0, kTwoPi * n);
    double num = 0.0, den = 0.0;
    for (int j = 0; j < U.nz; ++j) {
        const cplx r = (n * b + i2pin * U.U[j] + diss) * d2[j] - i2pin * U.U2[j] * chi[j];
        num = std::max(num, std::abs(r));
        den = std::max(den, std::abs(kTwoPi * n * U.U2[j] * chi[j]));
    }
    return den > 0.0 ? num / den : num;
}

double EigenSolution::boundary_defect() const {
    double m = 0.0;
    for (const auto& c : chi) m = std::max(m, std::abs(c));
    if (m == 0.0) return 0.0;
    return std::max(std::abs(chi.front()), std::abs(chi.back())) / m;
}

EigenSolution make_eigensolution(const ShearProfile& U, double gamma, double alpha, double nu_h, int n_max) {
    EigenSolution e;
    e.gamma = gamma;
    e.alpha = alpha;
    e.nu_h = nu_h;
    e.chi = build_chi(U, gamma);
    e.chi_zz = build_chi_zz(U, cplx(0.0, gamma));
    for (int n = 1; n <= n_max; ++n) e.beta[n] = beta_n(gamma, alpha, nu_h, n);
    return e;
}

double SuperpositionData::predicted_growth(double t) const {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
        const double n = static_cast<double>(modes[i]);
        const double w = coefficients[i] * coefficients[i] * std::pow(n, 2.0 * s);
        num += w * std::exp(2.0 * rates[i] * t);
        den += w;
    }
    return num / den;
}

namespace {
SuperpositionData assemble(const GridSpec& grid, const ShearProfile& U, double gamma,
                           const std::vector<std::pair<int, double>>& terms, double s) {
    grid.validate();
    if (U.nz != grid.nz) throw DimensionError("superposition: shear sampled on a different nz");
    const auto chi = build_chi(U, gamma);
    const auto chi_zz = build_chi_zz(U, cplx(0.0, gamma));
    SuperpositionData d;
    d.s = s;
    d.psi0_hat = SpectralField(grid);
    d.phi0_hat = SpectralField(grid);
    for (auto [n, a] : terms) {
        for (int j = 0; j < grid.nz; ++j) {
            d.psi0_hat(j, n) += 0.5 * a * chi[j];
            d.phi0_hat(j, n) += 0.5 * a * chi_zz[j];
        }
        d.modes.push_back(n);
        d.coefficients.push_back(a);
        d.rates.push_back(n * beta_n(gamma, grid.alpha, grid.nu_h, n));
    }
    d.psi0 = x_inverse(d.psi0_hat);
    return d;
}
}  // namespace

SuperpositionData superposition_data(const GridSpec& grid, const ShearProfile& U, double gamma, double s, int N,
                                     SuperpositionKind kind, double sigma) {
    if (N < 1) throw ParameterError("superposition_data: N must be >= 1");
    if (!(s >= 0.0)) throw ParameterError("superposition_data: s must be >= 0");
    if (3 * N > grid.nx)
        throw ResolutionError("superposition_data: N=" + std::to_string(N) + " exceeds nx/3 for nx=" +
                              std::to_string(grid.nx));
    if (kind == SuperpositionKind::Gevrey && !(sigma > 1.0))
        throw ParameterError("superposition_data: Gevrey order sigma must be > 1");
    std::vector<std::pair<int, double>> terms;
    for (int n = 1; n <= N; ++n) {
        const double a = kind == SuperpositionKind::Sobolev ? std::pow(static_cast<double>(n), -(s + 1.0))
                                                            : std::exp(-std::pow(static_cast<double>(n), 1.0 / sigma));
        terms.emplace_back(n, a);
    }
    return assemble(grid, U, gamma, terms, s);
}

SuperpositionData eigenmode_data(const GridSpec& grid, const ShearProfile& U, double gamma, int n, double amplitude) {
    if (n < 1 || n >= grid.nx / 2) throw ResolutionError("eigenmode_data: mode n out of range for nx");
    return assemble(grid, U, gamma, {{n, amplitude}}, 0.0);
}

double hs_x_norm_sq(const SpectralField& psi, double s) {
    const auto& g = psi.grid();
    const auto w = simpson_weights(g.nz);
    double total = 0.0;
    for (int k = 1; k < psi.nk(); ++k) {
        const double m = parseval_weight(g, k) * std::pow(static_cast<double>(k), 2.0 * s);
        double level = 0.0;
        for (int j = 0; j < g.nz; ++j) level += w[j] * std::norm(psi(j, k));
        total += m * level;
    }
    return total;
}

}  // namespace fpe
