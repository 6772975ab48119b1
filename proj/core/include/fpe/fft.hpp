#pragma once

#include <span>

#include "fpe/grid.hpp"

namespace fpe {

/// 1D real-to-half-complex transform of length n backed by FFTW.
///
/// forward() returns normalized Fourier coefficients (divided by n) so that
/// a constant signal 1 maps to coefficient 1 at k = 0. inverse() is the exact
/// adjoint synthesis. Plans are created once per length and shared; execution
/// is reentrant.
class RealFft {
public:
    static const RealFft& get(int n);

    int size() const { return n_; }
    void forward(std::span<const double> in, std::span<cplx> out) const;
    void inverse(std::span<const cplx> in, std::span<double> out) const;

    ~RealFft();
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;

private:
    explicit RealFft(int n);

    int n_;
    void* forward_plan_ = nullptr;
    void* inverse_plan_ = nullptr;
};

}  // namespace fpe
