#include "fpe/vertical.hpp"

#include <algorithm>
#include <cmath>

#include "fpe/errors.hpp"
#include "fpe/spectral.hpp"

namespace fpe {

std::vector<double> simpson_weights(int nz) {
    if (nz < 3 || nz % 2 == 0) throw ResolutionError("simpson_weights: nz must be odd and >= 3");
    const double h = 1.0 / (nz - 1);
    std::vector<double> w(nz);
    for (int j = 0; j < nz; ++j) w[j] = (j == 0 || j == nz - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    for (auto& v : w) v *= h / 3.0;
    return w;
}

namespace column {

template <typename T>
std::vector<T> derivative(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    if (n < 5) throw ResolutionError("column::derivative: need at least 5 nodes");
    std::vector<T> g(n);
    const double c = 1.0 / (12.0 * h);
    for (std::size_t j = 2; j + 2 < n; ++j) g[j] = c * (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]);
    g[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]);
    g[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
    g[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] - 3.0 * f[n - 5]);
    g[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] + f[n - 5]);
    return g;
}

template <typename T>
std::vector<T> cumulative_integral(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) throw ResolutionError("column::cumulative_integral: need an odd number >= 3 of nodes");
    std::vector<T> g(n, T{});
    for (std::size_t j = 2; j < n; j += 2) g[j] = g[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
    // Odd nodes: cubic partial panel so the node-to-node error stays smooth.
    for (std::size_t j = 1; j < n; j += 2) {
        T panel;
        if (j >= 2)
            panel = (h / 24.0) * (-f[j - 2] + 13.0 * f[j - 1] + 13.0 * f[j] - f[j + 1]);
        else if (n >= 5)
            panel = (h / 24.0) * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]);
        else
            panel = (h / 12.0) * (5.0 * f[0] + 8.0 * f[1] - f[2]);
        g[j] = g[j - 1] + panel;
    }
    return g;
}

template <typename T>
T integral(std::span<const T> f, double h) {
    const std::size_t n = f.size();
    if (n < 3 || n % 2 == 0) throw ResolutionError("column::integral: need an odd number >= 3 of nodes");
    T odd{}, even{};
    for (std::size_t j = 1; j + 1 < n; j += 2) odd += f[j];
    for (std::size_t j = 2; j + 1 < n; j += 2) even += f[j];
    return (h / 3.0) * (f[0] + f[n - 1] + 4.0 * odd + 2.0 * even);
}

template std::vector<double> derivative(std::span<const double>, double);
template std::vector<cplx> derivative(std::span<const cplx>, double);
template std::vector<double> cumulative_integral(std::span<const double>, double);
template std::vector<cplx> cumulative_integral(std::span<const cplx>, double);
template double integral(std::span<const double>, double);
template cplx integral(std::span<const cplx>, double);

}  // namespace column

namespace {

void check_order(const GridSpec& g, int order) {
    if (order < 1) throw ParameterError("dz: order must be >= 1");
    if (order > g.nz - 5)
        throw ResolutionError("dz: order " + std::to_string(order) + " infeasible on nz=" + std::to_string(g.nz));
}

// Apply a column operator to every x-column of a Field.
template <typename Op>
Field map_columns(const Field& f, Op&& op) {
    const auto& g = f.grid();
    Field out(g);
    std::vector<double> col(g.nz);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.nz; ++j) col[j] = f(j, i);
        auto r = op(std::span<const double>(col));
        for (int j = 0; j < g.nz; ++j) out(j, i) = r[j];
    }
    return out;
}

template <typename Op>
SpectralField map_modes(const SpectralField& F, Op&& op) {
    SpectralField out(F.grid());
    for (int k = 0; k < F.nk(); ++k) {
        auto m = F.mode(k);
        auto r = op(std::span<const cplx>(m));
        out.set_mode(k, r);
    }
    return out;
}

}  // namespace

Field dz(const Field& f, int order) {
    check_order(f.grid(), order);
    const double h = f.grid().dz();
    return map_columns(f, [&](std::span<const double> c) {
        auto r = column::derivative(c, h);
        for (int o = 1; o < order; ++o) r = column::derivative(std::span<const double>(r), h);
        return r;
    });
}

SpectralField dz(const SpectralField& F, int order) {
    check_order(F.grid(), order);
    const double h = F.grid().dz();
    return map_modes(F, [&](std::span<const cplx> c) {
        auto r = column::derivative(c, h);
        for (int o = 1; o < order; ++o) r = column::derivative(std::span<const cplx>(r), h);
        return r;
    });
}

Field cumint_z(const Field& f) {
    const double h = f.grid().dz();
    return map_columns(f, [&](std::span<const double> c) { return column::cumulative_integral(c, h); });
}

SpectralField cumint_z(const SpectralField& F) {
    const double h = F.grid().dz();
    return map_modes(F, [&](std::span<const cplx> c) { return column::cumulative_integral(c, h); });
}

std::vector<double> vertical_mean(const Field& u) {
    const auto& g = u.grid();
    const auto w = simpson_weights(g.nz);
    std::vector<double> m(g.nx, 0.0);
    for (int j = 0; j < g.nz; ++j) {
        auto r = u.row(j);
        for (int i = 0; i < g.nx; ++i) m[i] += w[j] * r[i];
    }
    return m;
}

std::vector<cplx> vertical_mean(const SpectralField& U) {
    const auto& g = U.grid();
    const auto w = simpson_weights(g.nz);
    std::vector<cplx> m(U.nk(), cplx{});
    for (int j = 0; j < g.nz; ++j) {
        auto r = U.row(j);
        for (int k = 0; k < U.nk(); ++k) m[k] += w[j] * r[k];
    }
    return m;
}

Field project_H(const Field& u) {
    const auto m = vertical_mean(u);
    Field out = u;
    for (int j = 0; j < u.grid().nz; ++j) {
        auto r = out.row(j);
        for (int i = 0; i < u.grid().nx; ++i) r[i] -= m[i];
    }
    return out;
}

SpectralField project_H(const SpectralField& U) {
    const auto m = vertical_mean(U);
    SpectralField out = U;
    for (int j = 0; j < U.grid().nz; ++j) {
        auto r = out.row(j);
        for (int k = 0; k < U.nk(); ++k) r[k] -= m[k];
    }
    return out;
}

SpectralField diagnose_w(const SpectralField& U) {
    auto W = cumint_z(dx(U));
    W *= -1.0;
    return W;
}

Field diagnose_w(const Field& u) { return x_inverse(diagnose_w(x_forward(u))); }

double top_defect(const Field& w) {
    auto top = w.row(w.grid().nz - 1);
    double m = 0.0;
    for (double v : top) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace fpe
