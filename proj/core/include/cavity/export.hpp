#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cavity/oracle.hpp"
#include "cavity/postprocess.hpp"

namespace cavity {

/// Shortest text that reads back to the same double (17 significant digits).
std::string format_real(double v);

/// Writes through a temporary file in the same directory and renames it.
/// Throws ErrorKind::io naming the path.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string field_csv(const FieldMap& map);
std::string sweep_csv(const RcsSweep& sweep);
std::string enhancement_csv(const EnhancementSpectrum& spectrum);
std::string coefficients_csv(const ApertureSolution& solution);
std::string oracle_csv(const std::vector<oracle::OracleReport>& reports);

void export_grid(const FieldMap& map, const std::filesystem::path& path);
void export_sweep(const RcsSweep& sweep, const std::filesystem::path& path);
void export_enhancement(const EnhancementSpectrum& spectrum, const std::filesystem::path& path);
void export_coefficients(const ApertureSolution& solution, const std::filesystem::path& path);
void export_oracle(const std::vector<oracle::OracleReport>& reports,
                   const std::filesystem::path& path);

}  // namespace cavity
