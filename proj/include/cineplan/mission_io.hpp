#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "cineplan/mission.hpp"

namespace cineplan {

/// Parses and validates a mission JSON document. Unknown keys are rejected.
/// Throws ParseError for malformed JSON and ValidationError (with the field
/// path) for schema or invariant violations.
Mission load_mission(std::string_view content);
Mission load_mission_file(const std::filesystem::path& path);

/// Parses a stand-alone map document (the `map` object of a mission file).
MapSpec load_map(std::string_view content);

/// Serializes a mission to the same JSON schema `load_mission` reads.
std::string save_mission(const Mission& mission);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace cineplan
