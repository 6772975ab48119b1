#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fpe {

using cplx = std::complex<double>;

/// Convention for the horizontal Fourier symbol: sigma(k) = 2*pi*|k| or |k|.
enum class SymbolScale { TwoPi, One };

std::string_view to_string(SymbolScale s);
SymbolScale symbol_scale_from_string(std::string_view name);

/// Discretization of the channel T x [0,1] together with the fractional
/// dissipation parameters. x has period 1 and nx uniform samples; z has nz
/// uniform nodes including both walls.
struct GridSpec {
    int nx = 64;
    int nz = 129;
    double alpha = 1.0;
    double nu_h = 0.0;
    SymbolScale symbol_scale = SymbolScale::TwoPi;

    /// Throws ParameterError unless nx is even and positive, nz is odd and
    /// at least 5, alpha lies in (0,2] and nu_h >= 0.
    void validate() const;

    double dx() const { return 1.0 / nx; }
    double dz() const { return 1.0 / (nz - 1); }
    /// Number of stored modes in the half spectrum, k = 0..nx/2.
    int nk() const { return nx / 2 + 1; }
    /// Largest retained |k| under the 2/3 rule.
    int dealias_cutoff() const { return (nx - 1) / 3; }

    double x(int i) const { return i * dx(); }
    double z(int j) const { return j * dz(); }

    /// sigma(k) for the selected symbol convention.
    double symbol(int k) const;
    /// nu_h * sigma(k)^alpha, the per-mode dissipation rate.
    double dissipation_rate(int k) const;

    bool operator==(const GridSpec&) const = default;
};

/// Real samples on the grid, stored row-major as values[z * nx + x].
class Field {
public:
    Field() = default;
    explicit Field(const GridSpec& grid);
    Field(const GridSpec& grid, std::vector<double> values);

    /// Samples f(x_i, z_j).
    template <typename F>
    static Field from_function(const GridSpec& grid, F&& f) {
        Field out(grid);
        for (int j = 0; j < grid.nz; ++j)
            for (int i = 0; i < grid.nx; ++i) out(j, i) = f(grid.x(i), grid.z(j));
        return out;
    }

    const GridSpec& grid() const { return grid_; }
    double& operator()(int j, int i) { return values_[static_cast<std::size_t>(j) * grid_.nx + i]; }
    double operator()(int j, int i) const { return values_[static_cast<std::size_t>(j) * grid_.nx + i]; }

    std::span<double> row(int j) { return {values_.data() + static_cast<std::size_t>(j) * grid_.nx, static_cast<std::size_t>(grid_.nx)}; }
    std::span<const double> row(int j) const { return {values_.data() + static_cast<std::size_t>(j) * grid_.nx, static_cast<std::size_t>(grid_.nx)}; }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }

    double max_abs() const;
    bool all_finite() const;

    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double a);

private:
    GridSpec grid_{};
    std::vector<double> values_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

/// Half-spectrum Fourier coefficients in x, one row per z level.
///
/// Coefficients follow f_k(z) = integral_T f(x,z) e^{-2 pi i k x} dx, so a real
/// field is represented by k = 0..nx/2 and the negative modes are implied by
/// conjugate symmetry. at_signed() exposes the full range -nx/2+1..nx/2.
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int nk() const { return grid_.nk(); }

    cplx& operator()(int j, int k) { return coeffs_[static_cast<std::size_t>(j) * nk() + k]; }
    cplx operator()(int j, int k) const { return coeffs_[static_cast<std::size_t>(j) * nk() + k]; }

    /// Coefficient for signed wavenumber k in [-nx/2+1, nx/2].
    cplx at_signed(int j, int k) const;

    std::span<cplx> row(int j) { return {coeffs_.data() + static_cast<std::size_t>(j) * nk(), static_cast<std::size_t>(nk())}; }
    std::span<const cplx> row(int j) const { return {coeffs_.data() + static_cast<std::size_t>(j) * nk(), static_cast<std::size_t>(nk())}; }

    /// z-profile of mode k copied into a contiguous vector.
    std::vector<cplx> mode(int k) const;
    void set_mode(int k, std::span<const cplx> profile);

    std::span<cplx> coeffs() { return coeffs_; }
    std::span<const cplx> coeffs() const { return coeffs_; }

    /// Largest violation of the realness constraints (imaginary part of the
    /// k = 0 and Nyquist coefficients).
    double realness_defect() const;

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator*=(double a);
    /// this += a * o
    SpectralField& axpy(double a, const SpectralField& o);

private:
    GridSpec grid_{};
    std::vector<cplx> coeffs_;
};

/// Throws DimensionError if the two grids differ in shape.
void require_same_shape(const GridSpec& a, const GridSpec& b, std::string_view what);

}  // namespace fpe
