#pragma once

#include "eigenshape/assembly.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace eigenshape {

/// Parsed run configuration. JSON schema:
///
///     {
///       "domain":     {"type": "interval"}
///                   | {"type": "rectangle", "lx": 1.0, "ly": 1.0}
///                   | {"type": "disk", "R": 1.0},
///       "resolution": 128 | [nx, ny],   // cells, rectangle cells, or disk rings
///       "bc":         {"type": "neumann"} | {"type": "robin", "beta": 1.0} | {"type": "dirichlet"},
///       "kappa":      0.5,
///       "c": 0.2 | "m0": 0.7,           // exactly one
///       "seeds":      [0, 1],           // RNG seeds for random-balanced starts
///       "output_dir": "out",
///       "threads":    0,                // 0: EIGENSHAPE_THREADS or all cores
///       "options":    {...}             // command specific, see README
///     }
struct RunConfig {
    enum class DomainKind { Interval, Rectangle, Disk };

    DomainKind domain = DomainKind::Interval;
    double lx = 1.0;
    double ly = 1.0;
    double radius = 1.0;
    int nx = 64;
    int ny = 64;
    BoundaryCondition bc = BoundaryCondition::neumann();
    double kappa = 1.0;
    std::optional<double> c;
    std::optional<double> m0;
    std::vector<std::uint64_t> seeds = {0};
    std::string output_dir = "out";
    int threads = 0;
    nlohmann::json options = nlohmann::json::object();

    /// c given directly or as (1 - m0) / (kappa + 1).
    double volume_fraction() const;
    Mesh build_mesh() const;
    /// Same as build_mesh with every cell count doubled.
    Mesh build_refined_mesh() const;

    bool operator==(const RunConfig&) const = default;
};

/// Throws InvalidArgument on schema violations, unknown keys, or when both or
/// neither of c and m0 are present.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& cfg);

} // namespace eigenshape
