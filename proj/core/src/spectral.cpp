#include "fpe/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fpe/errors.hpp"
#include "fpe/fft.hpp"

namespace fpe {

namespace {

template <typename Symbol>
SpectralField apply_multiplier(const SpectralField& F, Symbol&& symbol) {
    SpectralField out(F.grid());
    std::vector<cplx> m(F.nk());
    for (int k = 0; k < F.nk(); ++k) m[k] = symbol(k);
    for (int j = 0; j < F.grid().nz; ++j) {
        auto src = F.row(j);
        auto dst = out.row(j);
        for (int k = 0; k < F.nk(); ++k) dst[k] = m[k] * src[k];
    }
    return out;
}

double frac_symbol(double sigma, double s) {
    if (s == 0.0) return 1.0;
    return sigma == 0.0 ? 0.0 : std::pow(sigma, s);
}

}  // namespace

SpectralField x_forward(const Field& f) {
    const auto& g = f.grid();
    const auto& fft = RealFft::get(g.nx);
    SpectralField out(g);
    for (int j = 0; j < g.nz; ++j) fft.forward(f.row(j), out.row(j));
    return out;
}

Field x_inverse(const SpectralField& F) {
    const auto& g = F.grid();
    const auto& fft = RealFft::get(g.nx);
    Field out(g);
    for (int j = 0; j < g.nz; ++j) fft.inverse(F.row(j), out.row(j));
    return out;
}

SpectralField frac_laplacian_h(const SpectralField& F, double s) {
    if (!(s >= 0.0)) throw ParameterError("frac_laplacian_h: exponent must be >= 0, got " + std::to_string(s));
    const auto& g = F.grid();
    return apply_multiplier(F, [&](int k) { return cplx(frac_symbol(g.symbol(k), s)); });
}

Field frac_laplacian_h(const Field& f, double s) { return x_inverse(frac_laplacian_h(x_forward(f), s)); }

SpectralField hilbert_h(const SpectralField& F) {
    const int ny = F.grid().nx / 2;
    return apply_multiplier(F, [&](int k) { return (k == 0 || k == ny) ? cplx{} : cplx(0.0, -1.0); });
}

Field hilbert_h(const Field& f) { return x_inverse(hilbert_h(x_forward(f))); }

SpectralField dx(const SpectralField& F) {
    const int ny = F.grid().nx / 2;
    return apply_multiplier(F, [&](int k) { return k == ny ? cplx{} : cplx(0.0, 2.0 * std::numbers::pi * k); });
}

Field dx(const Field& f) { return x_inverse(dx(x_forward(f))); }

void dealias(SpectralField& F) {
    const int kc = F.grid().dealias_cutoff();
    for (int j = 0; j < F.grid().nz; ++j) {
        auto r = F.row(j);
        std::fill(r.begin() + kc + 1, r.end(), cplx{});
    }
}

namespace line {

namespace {
std::vector<cplx> forward(std::span<const double> f) {
    std::vector<cplx> c(f.size() / 2 + 1);
    RealFft::get(static_cast<int>(f.size())).forward(f, c);
    return c;
}

double symbol(int k, SymbolScale scale) {
    return scale == SymbolScale::TwoPi ? 2.0 * std::numbers::pi * k : static_cast<double>(k);
}

double parseval(std::span<const cplx> c, std::size_t n) {
    double sum = std::norm(c[0]);
    for (std::size_t k = 1; k < c.size(); ++k) sum += (2 * k == n ? 1.0 : 2.0) * std::norm(c[k]);
    return sum;
}
}  // namespace

std::vector<double> frac_laplacian(std::span<const double> f, double s, SymbolScale scale) {
    if (!(s >= 0.0)) throw ParameterError("frac_laplacian: exponent must be >= 0");
    auto c = forward(f);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= frac_symbol(symbol(static_cast<int>(k), scale), s);
    std::vector<double> out(f.size());
    RealFft::get(static_cast<int>(f.size())).inverse(c, out);
    return out;
}

double l2_norm(std::span<const double> f) { return lp_norm(f, 2.0); }

double lp_norm(std::span<const double> f, double p) {
    if (f.empty()) return 0.0;
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw ParameterError("lp_norm: p must be >= 1");
    double sum = 0.0;
    for (double v : f) sum += std::pow(std::abs(v), p);
    return std::pow(sum / static_cast<double>(f.size()), 1.0 / p);
}

double frac_l2_norm(std::span<const double> f, double s, SymbolScale scale) {
    if (!(s >= 0.0)) throw ParameterError("frac_l2_norm: exponent must be >= 0");
    auto c = forward(f);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= frac_symbol(symbol(static_cast<int>(k), scale), s);
    return std::sqrt(parseval(c, f.size()));
}

}  // namespace line

}  // namespace fpe
