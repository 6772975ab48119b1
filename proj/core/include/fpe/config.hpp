#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fpe/evolution.hpp"
#include "fpe/inequalities.hpp"

namespace fpe {

enum class ExperimentKind { Dispersion, Eigenmode, LinearEvolve, Simulate, CriticalityScan, VerifyInequalities };

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(std::string_view name);

struct ShearSpec {
    std::string type = "tanh";
    double L = 20.0;
    double amplitude = 1.0;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Simulate;
    RunConfig run;
    std::optional<ShearSpec> shear;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
    std::vector<double> scan_lambdas;
    std::vector<double> scan_nus;
    EnsembleSpec ensemble;
    bool snapshots = true;

    /// Materialize the shear profile on the run grid.
    void build_shear();
};

/// Parse and validate a JSON config. Unknown keys and out-of-range values
/// raise ValidationError naming the field; malformed JSON reports the line.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Effective configuration with every default spelled out.
std::string config_to_json(const ExperimentConfig& cfg);

}  // namespace fpe
