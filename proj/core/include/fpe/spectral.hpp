#pragma once

#include <span>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

SpectralField x_forward(const Field& f);
Field x_inverse(const SpectralField& F);

/// Horizontal fractional Laplacian: mode k is multiplied by sigma(k)^s.
/// The k = 0 mode is annihilated for s > 0. Throws ParameterError if s < 0.
SpectralField frac_laplacian_h(const SpectralField& F, double s);
Field frac_laplacian_h(const Field& f, double s);

/// Hilbert transform in x, symbol -i sign(k) regardless of symbol_scale.
/// The k = 0 and Nyquist modes are sent to zero.
SpectralField hilbert_h(const SpectralField& F);
Field hilbert_h(const Field& f);

/// Exact spectral x-derivative (symbol 2 pi i k, Nyquist mode dropped).
SpectralField dx(const SpectralField& F);
Field dx(const Field& f);

/// Zero every mode with k > grid.dealias_cutoff() in place.
void dealias(SpectralField& F);

/// One-dimensional periodic counterparts on [0,1) used by the inequality lab.
namespace line {

/// Multiply the Fourier coefficients of f by sigma(k)^s.
std::vector<double> frac_laplacian(std::span<const double> f, double s, SymbolScale scale);
/// Discrete L2 norm, (sum |f_i|^2 / n)^{1/2}.
double l2_norm(std::span<const double> f);
/// Discrete Lp norm by Riemann sum; p = infinity gives max |f_i|.
double lp_norm(std::span<const double> f, double p);
/// ||Lambda^s f||_{L2} through Parseval.
double frac_l2_norm(std::span<const double> f, double s, SymbolScale scale);

}  // namespace line

}  // namespace fpe
