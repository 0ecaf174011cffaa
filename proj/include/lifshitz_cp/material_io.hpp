#pragma once

// Strict JSON readers for wall-material and atom files. Unknown keys are
// rejected. Frequencies and energies are given in eV, densities in cm^-3,
// mobilities in cm^2 statV^-1 s^-1, conductivities in s^-1.

#include <filesystem>

#include "json.hpp"
#include "lifshitz_cp/response.hpp"

namespace lcp {

WallModel wall_from_json(const nlohmann::json& j, const std::string& fallback_name = "wall");
AtomModel atom_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; IoError if unreadable, ConfigError if malformed.
nlohmann::json read_json_file(const std::filesystem::path& path);
WallModel load_wall(const std::filesystem::path& path);
AtomModel load_atom(const std::filesystem::path& path);

}  // namespace lcp
