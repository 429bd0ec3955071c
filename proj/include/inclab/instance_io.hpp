#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "inclab/incidence.hpp"
#include "inclab/plane.hpp"

namespace inclab {

// Instance file:
//   {"p": 7, "points": [[x, y], ...],
//    "lines": [{"kind": "sl", "s": 1, "t": 0}, {"kind": "v", "x": 3}, ...]}
// Coordinates must be canonical residues in [0, p). Repeated entries are dropped and counted
// in Instance::duplicates_removed(). Every failure is Error{parse_error}; the message names the
// offending field and, for malformed JSON, the byte position.
Instance parse_instance(std::string_view text);
Instance read_instance(const std::filesystem::path& path);
std::string serialize_instance(const Instance& inst);
void write_instance(const Instance& inst, const std::filesystem::path& path);

// Point-plane file: {"p": 7, "points": [[x, y, z], ...], "planes": [[a, b, c, d], ...]}.
PlaneInstance3D parse_instance3d(std::string_view text);
PlaneInstance3D read_instance3d(const std::filesystem::path& path);
std::string serialize_instance3d(const PlaneInstance3D& inst);

nlohmann::json to_json(const AffinePoint& q);
nlohmann::json to_json(const AffineLine& l);
nlohmann::json to_json(const Instance& inst);

// Throws Error{parse_error} for unreadable files.
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace inclab
