#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cavity/assembly.hpp"
#include "cavity/oracle.hpp"

namespace cavity::tools {

enum ExitCode { kOk = 0, kValidationFailure = 1, kInputError = 2 };

/// Everything a subcommand records next to its outputs.
struct RunManifest {
  std::string subcommand;
  std::filesystem::path spec_path;
  std::string resolved_spec;  // JSON text, empty for validate
  std::vector<std::pair<std::string, std::string>> flags;
  std::vector<std::filesystem::path> outputs;
  double wall_time = 0.0;
  double rcond = 0.0;
  int system_size = 0;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, double>> results;
};

std::string manifest_json(const RunManifest& m);
void write_manifest(const RunManifest& m, const std::filesystem::path& out_dir);

struct SolveOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
};

struct FieldOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
  int nx = 41;
  int ny = 41;
  bool diagonal = false;
  int trace_samples = 200;
};

struct RcsOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
  int angles = 181;
  double phi_min = 0.0;
  double phi_max = kPi;
};

struct EnhanceOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
  double kappa_min = 0.5;
  double kappa_max = 9.0;
  int kappa_steps = 851;
  int cavity = -1;  // all
};

struct ConvergenceOptions {
  std::filesystem::path spec;
  std::filesystem::path out;
  int levels = 5;
  int base_panels = 16;
};

enum class ToleranceProfile { strict, standard };

struct ValidateOptions {
  std::filesystem::path out;
  ToleranceProfile profile = ToleranceProfile::standard;
};

int cmd_solve(const SolveOptions& opt);
int cmd_field(const FieldOptions& opt);
int cmd_rcs(const RcsOptions& opt);
int cmd_enhance(const EnhanceOptions& opt);
int cmd_convergence(const ConvergenceOptions& opt);
int cmd_validate(const ValidateOptions& opt);

/// kappa_min + i (kappa_max - kappa_min) / (steps - 1), i = 0..steps-1.
std::vector<double> kappa_grid(double kappa_min, double kappa_max, int steps);

struct ConvergenceTable {
  std::vector<int> panels;
  std::vector<double> h;       // 1 / panels
  std::vector<double> error;   // L2 distance to the finest level, 0 on it
  double order = 0.0;          // fitted over all but the finest level
  double wall_time = 0.0;
};

ConvergenceTable convergence_table(const ProblemSpec& spec, int levels, int base_panels = 16);
std::string convergence_csv(const ConvergenceTable& table);

/// Oracle suites shared by cmd_validate and the acceptance run.
struct SuiteSettings {
  int N = 10;
  std::vector<double> scales{0.25, 1.0, 4.0};
  int panels = 64;
  double block_tolerance = 1e-8;
  double parity_tolerance = 1e-9;
  int parity_cases = 30;
  int stacks = 200;
  int max_layers = 8;
  double tridiag_tolerance = 1e-12;
  unsigned seed = 20240611;
};

SuiteSettings suite_settings(ToleranceProfile profile);

std::vector<oracle::OracleReport> singular_block_suite(const SuiteSettings& s);
std::vector<oracle::OracleReport> parity_suite(const SuiteSettings& s);
std::vector<oracle::OracleReport> tridiagonal_suite(const SuiteSettings& s);
std::vector<oracle::OracleReport> fd_suite(const SuiteSettings& s);

/// Count of local maxima whose prominence reaches rel * max(q).
std::vector<std::size_t> prominent_peaks(const std::vector<double>& q, double rel = 0.05);

}  // namespace cavity::tools
