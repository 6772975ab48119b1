#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "fpe/evolution.hpp"
#include "fpe/inequalities.hpp"

namespace fpe {

/// Library version written into snapshot sidecars.
std::string_view code_version();

/// CSV time series, header
///   t,E0..EK,Et1..Et{K+1},omega_inf,w_inf,u_inf,bkm_integrand,Y0..YK
/// with every value printed as %.17g.
void write_series(const Trajectory& traj, const std::filesystem::path& path);
std::string series_csv(const Trajectory& traj);

/// Per-mode probe amplitudes, header t,k0,k1,...
void write_probes(const Trajectory& traj, const std::filesystem::path& path);

/// Writes <stem>.bin (little-endian float64, z-major then x) and <stem>.json.
void write_snapshot(const Field& field, double t, const std::filesystem::path& stem);

struct Snapshot {
    Field field;
    double t = 0.0;
};
/// Reads a snapshot written by write_snapshot from its stem.
Snapshot read_snapshot(const std::filesystem::path& stem);

void write_text(const std::filesystem::path& path, std::string_view text);

/// seed,s,nx,leibniz,borderline
void write_inequality_csv(std::span<const InequalitySample> samples, const EnsembleSpec& spec,
                          const std::filesystem::path& path);
std::vector<InequalitySample> read_inequality_csv(const std::filesystem::path& path);

/// lambda,nu_h,rate,grows
void write_scan_csv(const ScanTable& table, const std::filesystem::path& path);

}  // namespace fpe
