#include "fpe/norms.hpp"

#include <cmath>

#include "fpe/errors.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

namespace fpe {

double parseval_weight(const GridSpec& g, int k) { return (k == 0 || 2 * k == g.nx) ? 1.0 : 2.0; }

double frac_norm_sq(const SpectralField& F, double a) {
    if (!(a >= 0.0)) throw ParameterError("frac_norm_sq: exponent must be >= 0");
    const auto& g = F.grid();
    std::vector<double> mult(F.nk());
    for (int k = 0; k < F.nk(); ++k) {
        const double s = g.symbol(k);
        const double m = a == 0.0 ? 1.0 : (s == 0.0 ? 0.0 : std::pow(s, 2.0 * a));
        mult[k] = parseval_weight(g, k) * m;
    }
    const auto w = simpson_weights(g.nz);
    double total = 0.0;
    for (int j = 0; j < g.nz; ++j) {
        auto r = F.row(j);
        double level = 0.0;
        for (int k = 0; k < F.nk(); ++k) level += mult[k] * std::norm(r[k]);
        total += w[j] * level;
    }
    return total;
}

double l2_norm(const SpectralField& F) { return std::sqrt(frac_norm_sq(F, 0.0)); }
double l2_norm(const Field& f) { return l2_norm(x_forward(f)); }

double inner(const Field& f, const Field& g) {
    require_same_shape(f.grid(), g.grid(), "inner");
    const auto& gr = f.grid();
    const auto w = simpson_weights(gr.nz);
    double total = 0.0;
    for (int j = 0; j < gr.nz; ++j) {
        auto a = f.row(j);
        auto b = g.row(j);
        double level = 0.0;
        for (int i = 0; i < gr.nx; ++i) level += a[i] * b[i];
        total += w[j] * level * gr.dx();
    }
    return total;
}

double mixed_norm(const SpectralField& F, double a, int b) {
    if (b < 0) throw ParameterError("mixed_norm: vertical order must be >= 0");
    if (b == 0) return std::sqrt(frac_norm_sq(F, a));
    return std::sqrt(frac_norm_sq(dz(F, b), a));
}

double mixed_norm(const Field& f, double a, int b) { return mixed_norm(x_forward(f), a, b); }

double profile_l2(std::span<const cplx> profile, double h) {
    std::vector<double> sq(profile.size());
    for (std::size_t j = 0; j < profile.size(); ++j) sq[j] = std::norm(profile[j]);
    return std::sqrt(column::integral(std::span<const double>(sq), h));
}

}  // namespace fpe
