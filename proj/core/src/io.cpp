#include "fpe/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fpe/errors.hpp"
#include "fpe/rng.hpp"
#include "json.hpp"

#ifndef FPE_VERSION
#define FPE_VERSION "dev"
#endif

namespace fpe {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ensure_parent(const std::filesystem::path& path) {
    const auto parent = path.parent_path();
    if (parent.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
    if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
}

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode = std::ios::out) {
    ensure_parent(path);
    std::ofstream out(path, mode | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* ext) {
    auto p = stem;
    p += ext;
    return p;
}

std::uint64_t to_little(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
        return r;
    }
    return v;
}

}  // namespace

std::string_view code_version() { return FPE_VERSION; }

std::string series_csv(const Trajectory& traj) {
    std::ostringstream os;
    const int K = traj.reports.empty() ? 0 : traj.reports.front().levels();
    os << 't';
    for (int k = 0; k <= K; ++k) os << ",E" << k;
    for (int k = 1; k <= K + 1; ++k) os << ",Et" << k;
    os << ",omega_inf,w_inf,u_inf,bkm_integrand";
    for (int k = 0; k <= K; ++k) os << ",Y" << k;
    os << '\n';
    for (const auto& r : traj.reports) {
        os << fmt(r.t);
        for (double v : r.E) os << ',' << fmt(v);
        for (double v : r.Etilde) os << ',' << fmt(v);
        os << ',' << fmt(r.omega_inf) << ',' << fmt(r.w_inf) << ',' << fmt(r.u_inf) << ',' << fmt(r.bkm_integrand);
        for (double v : r.Y) os << ',' << fmt(v);
        os << '\n';
    }
    return os.str();
}

void write_series(const Trajectory& traj, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << series_csv(traj);
    if (!out) throw IoError("write failed: " + path.string());
}

void write_probes(const Trajectory& traj, const std::filesystem::path& path) {
    auto out = open_out(path);
    const std::size_t nk = traj.probes.empty() ? 0 : traj.probes.front().size();
    out << 't';
    for (std::size_t k = 0; k < nk; ++k) out << ",k" << k;
    out << '\n';
    for (std::size_t i = 0; i < traj.probes.size(); ++i) {
        out << fmt(traj.times[i]);
        for (double v : traj.probes[i]) out << ',' << fmt(v);
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_snapshot(const Field& field, double t, const std::filesystem::path& stem) {
    const auto bin = with_suffix(stem, ".bin");
    {
        auto out = open_out(bin, std::ios::binary);
        for (double v : field.values()) {
            const std::uint64_t bits = to_little(std::bit_cast<std::uint64_t>(v));
            char bytes[8];
            std::memcpy(bytes, &bits, 8);
            out.write(bytes, 8);
        }
        if (!out) throw IoError("write failed: " + bin.string());
    }
    const auto& g = field.grid();
    nlohmann::json side = {{"nx", g.nx},
                           {"nz", g.nz},
                           {"alpha", g.alpha},
                           {"nu_h", g.nu_h},
                           {"symbol_scale", std::string(to_string(g.symbol_scale))},
                           {"time", t},
                           {"layout", "z-major,x-fastest"},
                           {"dtype", "float64-le"},
                           {"code_version", std::string(code_version())},
                           {"rng", std::string(SeededRng::kAlgorithm)}};
    write_text(with_suffix(stem, ".json"), side.dump(2) + "\n");
}

Snapshot read_snapshot(const std::filesystem::path& stem) {
    const auto json_path = with_suffix(stem, ".json");
    std::ifstream js(json_path);
    if (!js) throw IoError("cannot open " + json_path.string());
    nlohmann::json side;
    try {
        js >> side;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("malformed sidecar " + json_path.string() + ": " + e.what());
    }
    GridSpec g;
    g.nx = side.at("nx").get<int>();
    g.nz = side.at("nz").get<int>();
    g.alpha = side.at("alpha").get<double>();
    g.nu_h = side.at("nu_h").get<double>();
    g.symbol_scale = symbol_scale_from_string(side.at("symbol_scale").get<std::string>());

    const auto bin = with_suffix(stem, ".bin");
    std::ifstream in(bin, std::ios::binary);
    if (!in) throw IoError("cannot open " + bin.string());
    std::vector<double> values(static_cast<std::size_t>(g.nx) * g.nz);
    for (auto& v : values) {
        char bytes[8];
        if (!in.read(bytes, 8)) throw IoError("truncated snapshot payload " + bin.string());
        std::uint64_t bits;
        std::memcpy(&bits, bytes, 8);
        v = std::bit_cast<double>(to_little(bits));
    }
    return {Field(g, std::move(values)), side.at("time").get<double>()};
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    auto out = open_out(path);
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

void write_inequality_csv(std::span<const InequalitySample> samples, const EnsembleSpec& spec,
                          const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "seed,s,nx,leibniz,borderline\n";
    for (const auto& s : samples)
        out << s.seed << ',' << fmt(spec.s) << ',' << spec.nx << ',' << fmt(s.leibniz) << ',' << fmt(s.borderline)
            << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<InequalitySample> read_inequality_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    std::vector<InequalitySample> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[5];
        for (auto& c : cell) std::getline(ss, c, ',');
        InequalitySample s;
        s.seed = std::stoull(cell[0]);
        s.leibniz = std::stod(cell[3]);
        s.borderline = std::stod(cell[4]);
        out.push_back(s);
    }
    return out;
}

void write_scan_csv(const ScanTable& table, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "lambda,nu_h,rate,grows\n";
    for (const auto& c : table.cells)
        out << fmt(c.lambda) << ',' << fmt(c.nu_h) << ',' << fmt(c.rate) << ',' << (c.grows ? 1 : 0) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace fpe
