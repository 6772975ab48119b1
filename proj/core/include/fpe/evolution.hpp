#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpe/diagnostics.hpp"
#include "fpe/grid.hpp"
#include "fpe/poisson.hpp"
#include "fpe/shear.hpp"

namespace fpe {

enum class RunMode { LinearPsi, Nonlinear };

std::string_view to_string(RunMode m);

/// Recipe for the initial state of a run.
///
///   Zero          identically zero
///   Mode          amplitude * sin(2 pi n x) cos(m pi z) as u (Nonlinear) or
///                 amplitude * cos(2 pi n x) sin(m pi z) as psi (LinearPsi)
///   Random        seeded random trigonometric velocity with |k| <= max_k and
///                 vertical modes cos(m pi z), m = 1..max_m
///   Eigenmode     amplitude * Re(chi(z) e^{2 pi i n x}) as psi; in Nonlinear
///                 mode its u = d_z psi perturbs the background shear
///   Superposition sum_n a_n Re(chi e^{2 pi i n x}) with Sobolev or Gevrey a_n
struct InitialData {
    enum class Kind { Zero, Mode, Random, Eigenmode, Superposition };
    Kind kind = Kind::Zero;
    double amplitude = 1.0;
    int n = 1;
    int m = 1;
    std::uint64_t seed = 0;
    int max_k = 4;
    int max_m = 4;
    double s = 0.0;
    int N = 8;
    SuperpositionKind weights = SuperpositionKind::Sobolev;
    double sigma = 2.0;
};

struct RunConfig {
    GridSpec grid;
    /// nullopt selects the adaptive CFL step.
    std::optional<double> dt;
    double t_end = 1.0;
    /// Upper bound on the adaptive step.
    double dt_max = 1e-2;
    RunMode mode = RunMode::Nonlinear;
    std::optional<ShearProfile> shear;
    InitialData initial;
    /// Emit a sample every this many steps (plus t = 0 and the final time).
    int sample_every = 1;
    int K = 2;
    bool dealias = true;
    double cfl_safety = 0.5;
    /// A run stops with a Blowup flag once the state norm exceeds this
    /// multiple of its initial value.
    double growth_limit = 1e8;

    /// Throws ParameterError on out-of-range values.
    void validate() const;
};

struct Trajectory {
    RunMode mode = RunMode::Nonlinear;
    std::vector<double> times;
    std::vector<EnergyReport> reports;
    /// probes[i][k]: L2_z norm of mode k at times[i]; psi modes in LinearPsi,
    /// u modes in Nonlinear.
    std::vector<std::vector<double>> probes;
    /// Final prognostic state (phi = psi_zz in LinearPsi, u in Nonlinear).
    SpectralField final_state;
    bool blowup = false;
    std::string blowup_reason;
    long steps = 0;

    /// Time series of a single probe mode.
    std::vector<double> probe_series(int k) const;
};

/// Linearized stream-function operator around a shear U. Acting on the
/// vorticity phi_k = d_zz psi_k of each mode:
///   -2 pi i k U phi_k + 2 pi i k U'' psi_k - nu_h sigma(k)^alpha phi_k
/// with psi_k from the Dirichlet problem psi_k'' = phi_k.
class LinearPsiOperator {
public:
    LinearPsiOperator(const GridSpec& grid, ShearProfile shear);

    const GridSpec& grid() const { return grid_; }
    const ShearProfile& shear() const { return shear_; }

    SpectralField apply(const SpectralField& phi, bool include_dissipation = true) const;
    /// psi from phi, mode by mode.
    SpectralField stream_function(const SpectralField& phi) const;

private:
    GridSpec grid_;
    ShearProfile shear_;
    DirichletPoisson poisson_;
};

SpectralField linear_tendency(const SpectralField& phi, const ShearProfile& U, const GridSpec& grid,
                              bool include_dissipation = true);

/// Advective tendency of the full system in spectral form,
///   -(N - vertical_mean(N)),   N = u d_x u + w d_z u,
/// with w diagnosed from u. Products are formed on the physical grid; with
/// dealias set the input and the product are truncated by the 2/3 rule.
/// Dissipation is left to the integrating factor.
SpectralField nonlinear_tendency(const SpectralField& u, bool dealias = true);
Field nonlinear_tendency(const Field& u, bool dealias = true);

using Tendency = std::function<SpectralField(const SpectralField&)>;

/// One classical RK4 step in integrating-factor variables
/// v_k = exp(nu_h sigma(k)^alpha t) u_k: the dissipation is integrated
/// exactly per mode and `tendency` carries everything else. Throws
/// ParameterError for dt <= 0.
SpectralField ifrk4_step(const SpectralField& state, double dt, const Tendency& tendency);

/// Initial prognostic state for a config (projected into H in Nonlinear mode).
SpectralField initial_state(const RunConfig& config);

using Observer = std::function<void(double t, const SpectralField& state)>;

/// Integrate to t_end, sampling diagnostics. A non-finite or runaway state
/// ends the run with the Blowup flag set.
Trajectory run(const RunConfig& config, const Observer& observer = {});
Trajectory run(const RunConfig& config, const SpectralField& initial, const Observer& observer = {});

/// Least-squares slope of log(amplitude) against t for samples with
/// t in [t_begin, t_end]. Throws FitError for fewer than 10 samples or a
/// nonpositive amplitude.
double fit_growth_rate(std::span<const double> times, std::span<const double> amplitudes, double t_begin,
                       double t_end);

struct ScanCell {
    double lambda = 0.0;
    double nu_h = 0.0;
    double rate = 0.0;
    bool grows = false;
    bool blowup = false;
};

struct ScanTable {
    double gamma = 0.0;  // dispersion root of the unscaled shear
    int n = 1;
    std::vector<ScanCell> cells;

    /// Linear interpolation of the sign change in lambda for the given
    /// nu_h; nullopt when the rate does not change sign on the grid.
    std::optional<double> threshold(double nu_h) const;
};

/// For every (lambda, nu_h): evolve the linearized system around lambda*U
/// from its own eigenmode n and record the fitted rate over the second half
/// of the run. Requires alpha = 1, a shear, and Eigenmode initial data.
ScanTable criticality_scan(const RunConfig& base, std::span<const double> lambdas, std::span<const double> nus);

}  // namespace fpe
