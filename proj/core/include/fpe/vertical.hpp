#pragma once

#include <span>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

/// Composite Simpson weights on nz (odd) uniform nodes of [0,1].
std::vector<double> simpson_weights(int nz);

/// Operations on a single vertical profile sampled on nz uniform nodes with
/// spacing h. Instantiated for double and cplx.
namespace column {

/// Fourth-order first derivative: centered five-point stencil in the
/// interior, one-sided fourth-order stencils on the two nodes next to each
/// wall. Requires at least five nodes.
template <typename T>
std::vector<T> derivative(std::span<const T> f, double h);

/// g(z_j) = integral_0^{z_j} f. Even nodes use composite Simpson; odd nodes
/// add a quadratic partial-panel integral over [z_{j-1}, z_j]. g(0) = 0.
template <typename T>
std::vector<T> cumulative_integral(std::span<const T> f, double h);

/// Simpson quadrature of f over [0,1].
template <typename T>
T integral(std::span<const T> f, double h);

}  // namespace column

/// Vertical derivative of the given order (repeated fourth-order first
/// derivative). Throws ResolutionError unless 1 <= order <= nz - 5.
Field dz(const Field& f, int order = 1);
SpectralField dz(const SpectralField& F, int order = 1);

/// g(x,z) = integral_0^z f(x, z') dz'.
Field cumint_z(const Field& f);
SpectralField cumint_z(const SpectralField& F);

/// Simpson vertical average at each x (equivalently each k).
std::vector<double> vertical_mean(const Field& u);
std::vector<cplx> vertical_mean(const SpectralField& U);

/// Subtract the vertical mean at every x, landing in the mean-free class.
Field project_H(const Field& u);
SpectralField project_H(const SpectralField& U);

/// Diagnostic vertical velocity w = -integral_0^z d_x u. w(.,0) = 0 exactly;
/// w(.,1) vanishes only when u has zero vertical mean (see top_defect).
Field diagnose_w(const Field& u);
SpectralField diagnose_w(const SpectralField& U);

/// max_x |w(x,1)|: the impermeability defect left by a u outside H.
double top_defect(const Field& w);

}  // namespace fpe
