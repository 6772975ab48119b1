#include "fpe/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fpe/errors.hpp"

namespace fpe {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

const RealFft& RealFft::get(int n) {
    static std::map<int, std::unique_ptr<RealFft>> cache;
    std::lock_guard lock(planner_mutex());
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::unique_ptr<RealFft>(new RealFft(n))).first;
    return *it->second;
}

RealFft::RealFft(int n) : n_(n) {
    if (n <= 0) throw ParameterError("RealFft: length must be positive");
    // Planning happens under planner_mutex (held by get()).
    std::vector<double> r(n);
    std::vector<cplx> c(n / 2 + 1);
    auto* cr = reinterpret_cast<fftw_complex*>(c.data());
    forward_plan_ = fftw_plan_dft_r2c_1d(n, r.data(), cr, FFTW_ESTIMATE | FFTW_UNALIGNED);
    inverse_plan_ = fftw_plan_dft_c2r_1d(n, cr, r.data(), FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_DESTROY_INPUT);
    if (!forward_plan_ || !inverse_plan_) throw Error("RealFft: FFTW planning failed for n=" + std::to_string(n));
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void RealFft::forward(std::span<const double> in, std::span<cplx> out) const {
    if (in.size() != static_cast<std::size_t>(n_) || out.size() != static_cast<std::size_t>(n_ / 2 + 1))
        throw DimensionError("RealFft::forward: buffer size mismatch");
    // r2c does not modify its input, but FFTW's signature is non-const.
    std::vector<double> scratch(in.begin(), in.end());
    fftw_execute_dft_r2c(static_cast<fftw_plan>(forward_plan_), scratch.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    const double inv = 1.0 / n_;
    for (auto& c : out) c *= inv;
}

void RealFft::inverse(std::span<const cplx> in, std::span<double> out) const {
    if (in.size() != static_cast<std::size_t>(n_ / 2 + 1) || out.size() != static_cast<std::size_t>(n_))
        throw DimensionError("RealFft::inverse: buffer size mismatch");
    std::vector<cplx> scratch(in.begin(), in.end());
    // The k = 0 and Nyquist coefficients of a real signal are real.
    scratch.front().imag(0.0);
    scratch.back().imag(0.0);
    fftw_execute_dft_c2r(static_cast<fftw_plan>(inverse_plan_), reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
}

}  // namespace fpe
