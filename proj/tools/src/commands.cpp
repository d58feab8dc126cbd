#include "cavity_tools/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include "cavity/config_io.hpp"
#include "cavity/export.hpp"
#include "cavity/postprocess.hpp"

namespace cavity::tools {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void prepare_out(const fs::path& out) {
  if (out.empty()) throw Error(ErrorKind::validation, "--out: output directory required");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error(ErrorKind::io, "cannot create " + out.string() + ": " + ec.message());
}

RunManifest start_manifest(const char* name, const fs::path& spec_path, const ProblemSpec& spec) {
  RunManifest m;
  m.subcommand = name;
  m.spec_path = spec_path;
  m.resolved_spec = dump_spec(spec);
  return m;
}

void record_solution(RunManifest& m, const ApertureSolution& sol) {
  m.rcond = sol.rcond;
  m.system_size = sol.layout.size();
  m.warnings.insert(m.warnings.end(), sol.warnings.begin(), sol.warnings.end());
}

std::string real_flag(double v) { return format_real(v); }

double l2_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return (a - b).norm();
}

}  // namespace

std::vector<double> kappa_grid(double kappa_min, double kappa_max, int steps) {
  if (steps < 1) throw Error(ErrorKind::validation, "--kappa-steps must be at least 1");
  if (!(kappa_min > 0.0) || !(kappa_max >= kappa_min))
    throw Error(ErrorKind::validation, "--kappa-min/--kappa-max: need 0 < min <= max");
  std::vector<double> k(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    k[static_cast<std::size_t>(i)] =
        steps == 1 ? kappa_min : kappa_min + i * (kappa_max - kappa_min) / (steps - 1);
  return k;
}

int cmd_solve(const SolveOptions& opt) {
  const auto t0 = Clock::now();
  const ProblemSpec spec = load_spec(opt.spec);
  prepare_out(opt.out);
  const Solved sv = solve(spec);
  const fs::path coeffs = opt.out / "coefficients.csv";
  export_coefficients(sv.solution, coeffs);

  RunManifest m = start_manifest("solve", opt.spec, sv.spec);
  m.flags = {{"out", opt.out.string()}};
  m.outputs = {coeffs};
  record_solution(m, sv.solution);
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return kOk;
}

int cmd_field(const FieldOptions& opt) {
  const auto t0 = Clock::now();
  if (opt.nx < 1 || opt.ny < 1) throw Error(ErrorKind::validation, "--grid: NX and NY must be >= 1");
  const ProblemSpec spec = load_spec(opt.spec);
  prepare_out(opt.out);
  const Solved sv = solve(spec);
  const FieldEvaluator eval(sv.spec, sv.tables, sv.solution);

  RunManifest m = start_manifest("field", opt.spec, sv.spec);
  m.flags = {{"out", opt.out.string()},
             {"grid", std::to_string(opt.nx) + " " + std::to_string(opt.ny)},
             {"diagonal", opt.diagonal ? "true" : "false"}};
  const fs::path grid = opt.out / "field.csv";
  export_grid(field_grid(eval, opt.nx, opt.ny), grid);
  m.outputs.push_back(grid);
  if (opt.diagonal) {
    FieldMap traces;
    for (std::size_t k = 0; k < sv.spec.cavities.size(); ++k) {
      FieldMap t = diagonal_trace(eval, static_cast<int>(k), opt.trace_samples);
      traces.samples.insert(traces.samples.end(), t.samples.begin(), t.samples.end());
    }
    const fs::path diag = opt.out / "diagonal_traces.csv";
    export_grid(traces, diag);
    m.outputs.push_back(diag);
  }
  record_solution(m, sv.solution);
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return kOk;
}

int cmd_rcs(const RcsOptions& opt) {
  const auto t0 = Clock::now();
  const ProblemSpec spec = load_spec(opt.spec);
  if (spec.polarization != Polarization::tm)
    throw Error(ErrorKind::unsupported, "unsupported polarization TE for rcs (TM only)");
  if (opt.angles < 1) throw Error(ErrorKind::validation, "--angles must be at least 1");
  if (!(opt.phi_min >= 0.0 && opt.phi_max <= kPi && opt.phi_min < opt.phi_max))
    throw Error(ErrorKind::validation, "--phi-min/--phi-max: need 0 <= min < max <= pi");
  prepare_out(opt.out);
  SingularBlockCache cache;
  const RcsSweep sweep = backscatter_sweep(spec, open_angles(opt.angles, opt.phi_min, opt.phi_max),
                                           cache);
  const fs::path out = opt.out / "rcs.csv";
  export_sweep(sweep, out);

  RunManifest m = start_manifest("rcs", opt.spec, spec);
  m.flags = {{"out", opt.out.string()},
             {"angles", std::to_string(opt.angles)},
             {"phi-min", real_flag(opt.phi_min)},
             {"phi-max", real_flag(opt.phi_max)}};
  m.outputs = {out};
  m.system_size = make_layout(spec).size();
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return kOk;
}

int cmd_enhance(const EnhanceOptions& opt) {
  const auto t0 = Clock::now();
  const ProblemSpec spec = load_spec(opt.spec);
  const int count = static_cast<int>(spec.cavities.size());
  if (opt.cavity < -1 || opt.cavity >= count)
    throw Error(ErrorKind::validation,
                "--cavity: index " + std::to_string(opt.cavity) + " outside 0.." +
                    std::to_string(count - 1));
  const std::vector<double> kappa = kappa_grid(opt.kappa_min, opt.kappa_max, opt.kappa_steps);
  prepare_out(opt.out);
  SingularBlockCache cache;
  const EnhancementSpectrum q = enhancement_sweep(spec, kappa, cache);

  std::vector<int> cols;
  for (int k = 0; k < count; ++k)
    if (opt.cavity < 0 || opt.cavity == k) cols.push_back(k);
  std::ostringstream csv;
  csv << "kappa";
  for (int k : cols) csv << ",Q_E_cavity" << k;
  csv << '\n';
  for (std::size_t i = 0; i < q.kappa.size(); ++i) {
    csv << format_real(q.kappa[i]);
    for (int k : cols) csv << ',' << format_real(q.q[i][static_cast<std::size_t>(k)]);
    csv << '\n';
  }
  const fs::path out = opt.out / "enhancement.csv";
  write_file_atomic(out, csv.str());

  RunManifest m = start_manifest("enhance", opt.spec, spec);
  m.flags = {{"out", opt.out.string()},
             {"kappa-min", real_flag(opt.kappa_min)},
             {"kappa-max", real_flag(opt.kappa_max)},
             {"kappa-steps", std::to_string(opt.kappa_steps)},
             {"cavity", opt.cavity < 0 ? "all" : std::to_string(opt.cavity)}};
  m.outputs = {out};
  m.system_size = make_layout(spec).size();
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return kOk;
}

ConvergenceTable convergence_table(const ProblemSpec& spec, int levels, int base_panels) {
  if (levels < 3) throw Error(ErrorKind::validation, "--levels must be at least 3");
  if (base_panels < 1) throw Error(ErrorKind::validation, "base panel count must be positive");
  const auto t0 = Clock::now();
  ConvergenceTable t;
  std::vector<Eigen::VectorXcd> u;
  SingularBlockCache cache;
  for (int l = 0; l < levels; ++l) {
    ProblemSpec s = spec;
    s.quad.panels = base_panels << l;
    t.panels.push_back(s.quad.panels);
    t.h.push_back(1.0 / s.quad.panels);
    u.push_back(solve(s, cache).solution.coefficients);
  }
  for (const auto& v : u) t.error.push_back(l2_distance(v, u.back()));
  std::vector<double> h(t.h.begin(), t.h.end() - 1), e(t.error.begin(), t.error.end() - 1);
  t.order = oracle::fitted_order(h, e);
  t.wall_time = seconds_since(t0);
  return t;
}

std::string convergence_csv(const ConvergenceTable& table) {
  std::ostringstream s;
  s << "level,panels,h,l2_error\n";
  for (std::size_t i = 0; i < table.panels.size(); ++i)
    s << i << ',' << table.panels[i] << ',' << format_real(table.h[i]) << ','
      << format_real(table.error[i]) << '\n';
  return s.str();
}

int cmd_convergence(const ConvergenceOptions& opt) {
  const auto t0 = Clock::now();
  const ProblemSpec spec = load_spec(opt.spec);
  prepare_out(opt.out);
  const ConvergenceTable t = convergence_table(spec, opt.levels, opt.base_panels);
  const fs::path out = opt.out / "convergence.csv";
  write_file_atomic(out, convergence_csv(t));
  std::cout << "fitted order " << format_real(t.order) << '\n';

  RunManifest m = start_manifest("convergence", opt.spec, spec);
  m.flags = {{"out", opt.out.string()},
             {"levels", std::to_string(opt.levels)},
             {"base-panels", std::to_string(opt.base_panels)}};
  m.outputs = {out};
  m.system_size = make_layout(spec).size();
  m.results = {{"fitted_order", t.order}};
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return kOk;
}

int cmd_validate(const ValidateOptions& opt) {
  const auto t0 = Clock::now();
  prepare_out(opt.out);
  const SuiteSettings s = suite_settings(opt.profile);
  std::vector<oracle::OracleReport> all;
  for (auto suite : {parity_suite, singular_block_suite, tridiagonal_suite, fd_suite}) {
    auto r = suite(s);
    all.insert(all.end(), r.begin(), r.end());
  }
  const fs::path out = opt.out / "oracle.csv";
  export_oracle(all, out);

  std::size_t failed = 0;
  for (const auto& r : all)
    if (!r.passed) {
      ++failed;
      std::cerr << "FAIL " << r.case_id << " rel_error " << format_real(r.rel_error) << '\n';
    }
  std::cout << all.size() - failed << "/" << all.size() << " oracle cases passed\n";

  RunManifest m;
  m.subcommand = "validate";
  m.flags = {{"out", opt.out.string()},
             {"tolerance-profile", opt.profile == ToleranceProfile::strict ? "strict" : "default"}};
  m.outputs = {out};
  m.results = {{"cases", static_cast<double>(all.size())},
               {"failed", static_cast<double>(failed)}};
  m.wall_time = seconds_since(t0);
  write_manifest(m, opt.out);
  return failed == 0 ? kOk : kValidationFailure;
}

std::vector<std::size_t> prominent_peaks(const std::vector<double>& q, double rel) {
  std::vector<std::size_t> peaks;
  if (q.size() < 3) return peaks;
  double top = 0.0;
  for (double v : q) top = std::max(top, v);
  for (std::size_t i = 1; i + 1 < q.size(); ++i) {
    if (!(q[i] > q[i - 1] && q[i] >= q[i + 1])) continue;
    // lowest point on each side before reaching a higher value
    double left = q[i], right = q[i];
    for (std::size_t j = i; j-- > 0;) {
      if (q[j] > q[i]) break;
      left = std::min(left, q[j]);
    }
    for (std::size_t j = i + 1; j < q.size(); ++j) {
      if (q[j] > q[i]) break;
      right = std::min(right, q[j]);
    }
    if (q[i] - std::max(left, right) >= rel * top) peaks.push_back(i);
  }
  return peaks;
}

}  // namespace cavity::tools
