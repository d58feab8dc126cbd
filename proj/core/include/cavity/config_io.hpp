#pragma once

#include <filesystem>
#include <string>

#include "cavity/model.hpp"

namespace cavity {

inline constexpr int kSchemaVersion = 1;

/// Reads a JSON scenario; the result is validated. Parse failures report
/// the byte/line position, schema failures the JSON path of the field.
ProblemSpec load_spec(const std::filesystem::path& path);
ProblemSpec parse_spec(const std::string& text);

/// Writes the scenario with shortest round-trip number formatting, so
/// load_spec(save_spec(s)) == s.
void save_spec(const ProblemSpec& spec, const std::filesystem::path& path);
std::string dump_spec(const ProblemSpec& spec);

std::string to_string(Polarization p);

}  // namespace cavity
