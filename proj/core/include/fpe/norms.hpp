#pragma once

#include "fpe/grid.hpp"

namespace fpe {

/// Parseval multiplicity of half-spectrum index k (1 for k = 0 and Nyquist).
double parseval_weight(const GridSpec& g, int k);

/// ||Lambda_h^a F||_{L2(Omega)}^2 with Parseval in x and Simpson in z.
double frac_norm_sq(const SpectralField& F, double a);

double l2_norm(const Field& f);
double l2_norm(const SpectralField& F);

/// <f, g>_{L2(Omega)}: trapezoid (exact for trigonometric data) in x,
/// Simpson in z.
double inner(const Field& f, const Field& g);

/// ||Lambda_h^a d_z^b f||_{L2(Omega)}; b = 0 skips the vertical derivative.
double mixed_norm(const Field& f, double a, int b);
double mixed_norm(const SpectralField& F, double a, int b);

/// L2 norm in z of a single complex mode profile.
double profile_l2(std::span<const cplx> profile, double h);

}  // namespace fpe
