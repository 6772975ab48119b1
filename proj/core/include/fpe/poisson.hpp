#pragma once

#include <span>
#include <vector>

#include "fpe/grid.hpp"

namespace fpe {

/// Solver for psi'' = phi on [0,1] with psi(0) = psi(1) = 0 on nz uniform
/// nodes. The matrix is the constant (1, -2, 1) tridiagonal; its Thomas
/// factors are computed once. The Fourth scheme corrects the right-hand side
/// with the h^2/12 phi'' term (Numerov), which keeps the system tridiagonal.
class DirichletPoisson {
public:
    enum class Scheme { Second, Fourth };

    explicit DirichletPoisson(int nz, Scheme scheme = Scheme::Fourth);

    int size() const { return nz_; }
    std::vector<cplx> solve(std::span<const cplx> rhs) const;
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    template <typename T>
    std::vector<T> solve_impl(std::span<const T> rhs) const;

    int nz_;
    double h_;
    Scheme scheme_;
    std::vector<double> cprime_;  // modified super-diagonal
    std::vector<double> denom_;   // pivots
};

}  // namespace fpe
