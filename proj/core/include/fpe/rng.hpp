#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace fpe {

/// mt19937_64 with a hand-rolled 53-bit uniform mapping, so that seeded
/// streams are identical across standard libraries.
class SeededRng {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/u53";

    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer on [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace fpe
