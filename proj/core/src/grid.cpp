#include "fpe/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpe/errors.hpp"

namespace fpe {

std::string_view to_string(SymbolScale s) {
    return s == SymbolScale::TwoPi ? "two_pi" : "one";
}

SymbolScale symbol_scale_from_string(std::string_view name) {
    if (name == "two_pi" || name == "TwoPi") return SymbolScale::TwoPi;
    if (name == "one" || name == "One") return SymbolScale::One;
    throw ParameterError("unknown symbol_scale '" + std::string(name) + "' (expected two_pi or one)");
}

void GridSpec::validate() const {
    if (nx <= 0 || nx % 2 != 0) throw ParameterError("nx must be a positive even integer, got " + std::to_string(nx));
    if (nz < 5 || nz % 2 == 0) throw ParameterError("nz must be an odd integer >= 5, got " + std::to_string(nz));
    if (!(alpha > 0.0 && alpha <= 2.0)) throw ParameterError("alpha must lie in (0,2], got " + std::to_string(alpha));
    if (!(nu_h >= 0.0)) throw ParameterError("nu_h must be >= 0, got " + std::to_string(nu_h));
}

double GridSpec::symbol(int k) const {
    const double ak = std::abs(static_cast<double>(k));
    return symbol_scale == SymbolScale::TwoPi ? 2.0 * std::numbers::pi * ak : ak;
}

double GridSpec::dissipation_rate(int k) const {
    if (k == 0 || nu_h == 0.0) return 0.0;
    return nu_h * std::pow(symbol(k), alpha);
}

void require_same_shape(const GridSpec& a, const GridSpec& b, std::string_view what) {
    if (a.nx != b.nx || a.nz != b.nz)
        throw DimensionError(std::string(what) + ": grid shapes differ (" + std::to_string(a.nz) + "x" +
                             std::to_string(a.nx) + " vs " + std::to_string(b.nz) + "x" + std::to_string(b.nx) + ")");
}

// ---------------------------------------------------------------- Field

Field::Field(const GridSpec& grid)
    : grid_(grid), values_(static_cast<std::size_t>(grid.nx) * grid.nz, 0.0) {}

Field::Field(const GridSpec& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(grid.nx) * grid.nz)
        throw DimensionError("Field: expected " + std::to_string(grid.nx * grid.nz) + " samples, got " +
                             std::to_string(values_.size()));
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool Field::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& o) {
    require_same_shape(grid_, o.grid_, "Field +=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

Field& Field::operator-=(const Field& o) {
    require_same_shape(grid_, o.grid_, "Field -=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

Field& Field::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

// -------------------------------------------------------- SpectralField

SpectralField::SpectralField(const GridSpec& grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.nk()) * grid.nz, cplx{}) {}

cplx SpectralField::at_signed(int j, int k) const {
    const int half = grid_.nx / 2;
    if (k <= -half || k > half)
        throw DimensionError("SpectralField: wavenumber " + std::to_string(k) + " outside (-nx/2, nx/2]");
    return k >= 0 ? (*this)(j, k) : std::conj((*this)(j, -k));
}

std::vector<cplx> SpectralField::mode(int k) const {
    std::vector<cplx> out(grid_.nz);
    for (int j = 0; j < grid_.nz; ++j) out[j] = (*this)(j, k);
    return out;
}

void SpectralField::set_mode(int k, std::span<const cplx> profile) {
    if (profile.size() != static_cast<std::size_t>(grid_.nz))
        throw DimensionError("SpectralField::set_mode: profile length mismatch");
    for (int j = 0; j < grid_.nz; ++j) (*this)(j, k) = profile[j];
}

double SpectralField::realness_defect() const {
    double d = 0.0;
    const int ny = grid_.nx / 2;
    for (int j = 0; j < grid_.nz; ++j) {
        d = std::max(d, std::abs((*this)(j, 0).imag()));
        d = std::max(d, std::abs((*this)(j, ny).imag()));
    }
    return d;
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    require_same_shape(grid_, o.grid_, "SpectralField +=");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
}

SpectralField& SpectralField::axpy(double a, const SpectralField& o) {
    require_same_shape(grid_, o.grid_, "SpectralField axpy");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * o.coeffs_[i];
    return *this;
}

}  // namespace fpe
