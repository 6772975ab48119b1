#include "fpe/poisson.hpp"

#include <cmath>

#include "fpe/errors.hpp"

namespace fpe {

DirichletPoisson::DirichletPoisson(int nz, Scheme scheme) : nz_(nz), h_(1.0 / (nz - 1)), scheme_(scheme) {
    if (nz < 3) throw ResolutionError("DirichletPoisson: need at least 3 nodes");
    const int m = nz - 2;  // interior unknowns
    cprime_.resize(m);
    denom_.resize(m);
    double prev = 0.0;
    for (int i = 0; i < m; ++i) {
        const double d = -2.0 - (i > 0 ? prev : 0.0);
        if (std::abs(d) < 1e-300) throw Error("DirichletPoisson: singular tridiagonal pivot");
        denom_[i] = d;
        cprime_[i] = 1.0 / d;
        prev = cprime_[i];
    }
}

template <typename T>
std::vector<T> DirichletPoisson::solve_impl(std::span<const T> rhs) const {
    if (rhs.size() != static_cast<std::size_t>(nz_)) throw DimensionError("DirichletPoisson::solve: size mismatch");
    const int m = nz_ - 2;
    const double h2 = h_ * h_;
    std::vector<T> d(m);
    for (int i = 0; i < m; ++i) {
        const int j = i + 1;
        d[i] = scheme_ == Scheme::Fourth ? (h2 / 12.0) * (rhs[j - 1] + 10.0 * rhs[j] + rhs[j + 1]) : h2 * rhs[j];
    }
    // Forward sweep (sub-diagonal is 1).
    for (int i = 0; i < m; ++i) {
        if (i > 0) d[i] -= d[i - 1];
        d[i] /= denom_[i];
    }
    std::vector<T> psi(nz_, T{});
    psi[m] = d[m - 1];
    for (int i = m - 2; i >= 0; --i) psi[i + 1] = d[i] - cprime_[i] * psi[i + 2];
    return psi;
}

std::vector<cplx> DirichletPoisson::solve(std::span<const cplx> rhs) const { return solve_impl(rhs); }
std::vector<double> DirichletPoisson::solve(std::span<const double> rhs) const { return solve_impl(rhs); }

}  // namespace fpe
