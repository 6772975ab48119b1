#include "fpe/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fpe/errors.hpp"
#include "fpe/norms.hpp"
#include "fpe/spectral.hpp"
#include "fpe/vertical.hpp"

namespace fpe {

namespace {

double reciprocal(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

void check_pair(double p, double q, const char* name) {
    if (std::abs(reciprocal(p) + reciprocal(q) - 0.5) > 1e-12)
        throw ParameterError(std::string("leibniz_ratio: exponents ") + name + " must satisfy 1/p + 1/q = 1/2");
}

std::vector<double> product(std::span<const double> f, std::span<const double> g) {
    if (f.size() != g.size()) throw DimensionError("inequality lab: sample length mismatch");
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i] * g[i];
    return out;
}

}  // namespace

double leibniz_ratio(std::span<const double> f, std::span<const double> g, double s, LeibnizExponents e,
                     SymbolScale scale) {
    if (!(s >= 0.0)) throw ParameterError("leibniz_ratio: s must be >= 0");
    check_pair(e.p1, e.q1, "(p1,q1)");
    check_pair(e.p2, e.q2, "(p2,q2)");
    const auto fg = product(f, g);
    const double lhs = line::frac_l2_norm(fg, s, scale);
    const auto Lf = line::frac_laplacian(f, s, scale);
    const auto Lg = line::frac_laplacian(g, s, scale);
    const double den = line::lp_norm(f, e.p1) * line::lp_norm(Lg, e.q1) + line::lp_norm(Lf, e.p2) * line::lp_norm(g, e.q2);
    if (!(den > 0.0)) throw UndefinedRatioError("leibniz_ratio: denominator vanishes");
    return lhs / den;
}

double borderline_ratio(std::span<const double> f, std::span<const double> h, double s, SymbolScale scale) {
    if (!(s > 0.0 && s < 1.0)) throw ParameterError("borderline_ratio: s must lie in (0,1)");
    const auto fh = product(f, h);
    const double lhs = line::frac_l2_norm(fh, s, scale);
    const double den = line::lp_norm(f, kInf) * line::frac_l2_norm(h, s, scale) +
                       line::frac_l2_norm(f, s + 0.5, scale) * line::l2_norm(h);
    if (!(den > 0.0)) throw UndefinedRatioError("borderline_ratio: denominator vanishes");
    return lhs / den;
}

PoincareRatios poincare_ratios(const Field& u) {
    PoincareRatios r;
    const double uz = mixed_norm(u, 0.0, 1);
    const double ux = l2_norm(dx(u));
    if (!(uz > 0.0) || !(ux > 0.0)) throw UndefinedRatioError("poincare_ratios: vanishing derivative norm");
    r.z_ratio = l2_norm(u) / uz;
    r.w_ratio = l2_norm(diagnose_w(u)) / ux;
    return r;
}

std::vector<double> random_trig_polynomial(SeededRng& rng, int nx, int max_degree) {
    if (nx <= 0 || nx % 2) throw ParameterError("random_trig_polynomial: nx must be positive and even");
    if (max_degree < 1) throw ParameterError("random_trig_polynomial: max_degree must be >= 1");
    const int d = rng.integer(1, max_degree);
    std::vector<double> a(d + 1), b(d + 1, 0.0);
    a[0] = rng.uniform(-1.0, 1.0);
    for (int k = 1; k <= d; ++k) {
        a[k] = rng.uniform(-1.0, 1.0);
        b[k] = rng.uniform(-1.0, 1.0);
    }
    std::vector<double> f(nx);
    for (int i = 0; i < nx; ++i) {
        const double x = static_cast<double>(i) / nx;
        double v = a[0];
        for (int k = 1; k <= d; ++k) {
            const double th = 2.0 * std::numbers::pi * k * x;
            v += a[k] * std::cos(th) + b[k] * std::sin(th);
        }
        f[i] = v;
    }
    return f;
}

std::vector<InequalitySample> inequality_ensemble(const EnsembleSpec& spec) {
    if (spec.seeds < 1) throw ParameterError("inequality_ensemble: need at least one seed");
    if (2 * spec.max_degree > spec.nx / 2)
        throw ResolutionError("inequality_ensemble: nx too small to resolve products of degree-" +
                              std::to_string(spec.max_degree) + " polynomials");
    std::vector<InequalitySample> out;
    out.reserve(spec.seeds);
    for (int i = 0; i < spec.seeds; ++i) {
        InequalitySample smp;
        smp.seed = spec.first_seed + static_cast<std::uint64_t>(i);
        SeededRng rng(smp.seed);
        const auto f = random_trig_polynomial(rng, spec.nx, spec.max_degree);
        const auto g = random_trig_polynomial(rng, spec.nx, spec.max_degree);
        smp.leibniz = leibniz_ratio(f, g, spec.s, {}, spec.scale);
        smp.borderline = borderline_ratio(f, g, spec.s, spec.scale);
        out.push_back(smp);
    }
    return out;
}

EnsembleMax ensemble_max(std::span<const InequalitySample> samples) {
    EnsembleMax m;
    for (const auto& s : samples) {
        m.leibniz = std::max(m.leibniz, s.leibniz);
        m.borderline = std::max(m.borderline, s.borderline);
    }
    return m;
}

}  // namespace fpe
