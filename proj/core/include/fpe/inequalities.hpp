#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "fpe/grid.hpp"
#include "fpe/rng.hpp"

namespace fpe {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Hoelder exponents of the two right-hand terms; each pair must satisfy
/// 1/p + 1/q = 1/2 (infinity counts as 0).
struct LeibnizExponents {
    double p1 = kInf, q1 = 2.0, p2 = kInf, q2 = 2.0;
};

/// ||Lambda^s (f g)||_2 / (||f||_{p1} ||Lambda^s g||_{q1} + ||Lambda^s f||_{p2} ||g||_{q2})
/// on uniform periodic samples of [0,1). Discrete Lp norms are Riemann sums.
double leibniz_ratio(std::span<const double> f, std::span<const double> g, double s, LeibnizExponents e = {},
                     SymbolScale scale = SymbolScale::TwoPi);

/// ||Lambda^s (f h)||_2 / (||f||_inf ||Lambda^s h||_2 + ||Lambda^{s+1/2} f||_2 ||h||_2), s in (0,1).
double borderline_ratio(std::span<const double> f, std::span<const double> h, double s = 0.5,
                        SymbolScale scale = SymbolScale::TwoPi);

struct PoincareRatios {
    double z_ratio = 0.0;  // ||u|| / ||d_z u||
    double w_ratio = 0.0;  // ||w|| / ||d_x u||
};

PoincareRatios poincare_ratios(const Field& u);

/// Random trigonometric polynomial a_0 + sum_{k<=d} a_k cos(2 pi k x) + b_k sin(2 pi k x)
/// sampled on nx points, with degree d uniform in [1, max_degree] and
/// coefficients uniform in [-1, 1].
std::vector<double> random_trig_polynomial(SeededRng& rng, int nx, int max_degree);

struct InequalitySample {
    std::uint64_t seed = 0;
    double leibniz = 0.0;
    double borderline = 0.0;
};

struct EnsembleSpec {
    int seeds = 1000;
    std::uint64_t first_seed = 0;
    double s = 0.5;
    int nx = 128;
    int max_degree = 32;
    SymbolScale scale = SymbolScale::TwoPi;
};

/// For each seed draws f and g (= h) and evaluates both ratios with
/// exponents (inf, 2, inf, 2).
std::vector<InequalitySample> inequality_ensemble(const EnsembleSpec& spec);

struct EnsembleMax {
    double leibniz = 0.0;
    double borderline = 0.0;
};
EnsembleMax ensemble_max(std::span<const InequalitySample> samples);

}  // namespace fpe
