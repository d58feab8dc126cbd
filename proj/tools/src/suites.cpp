#include <algorithm>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "cavity/singular_block.hpp"
#include "cavity_tools/commands.hpp"

namespace cavity::tools {
namespace {

const char* kind_name(TrigKind kind) { return kind == TrigKind::sine ? "sin" : "cos"; }

std::string case_name(const char* prefix, TrigKind kind, double c, int m, int n) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_%s_c%g_m%d_n%d", prefix, kind_name(kind), c, m, n);
  return buf;
}

const oracle::BlockTableResult& oracle_table(int N, double c, TrigKind kind) {
  static std::mutex mutex;
  static std::map<std::tuple<int, double, int>, oracle::BlockTableResult> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_tuple(N, c, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, oracle::singular_block_table(N, c, kind)).first;
  return it->second;
}

std::string grid_text(const oracle::BlockTableResult& o) {
  return "refinement=" + std::to_string(o.refinement) + ";points=" + std::to_string(o.points);
}

ProblemSpec example1(Polarization pol) {
  ProblemSpec s;
  s.polarization = pol;
  s.wave.kappa0 = 1.5;
  s.wave.theta = kPi / 9;
  s.N = 30;
  Cavity c;
  c.a = -0.5;
  c.b = 0.5;
  c.layers = {Layer{0.0, -1.5, 1.5}};
  s.cavities = {c};
  return validate(s);
}

}  // namespace

SuiteSettings suite_settings(ToleranceProfile profile) {
  SuiteSettings s;
  if (profile == ToleranceProfile::standard) {
    s.N = 6;
    s.panels = 32;
    s.block_tolerance = 1e-6;
    s.stacks = 50;
  }
  return s;
}

std::vector<oracle::OracleReport> singular_block_suite(const SuiteSettings& s) {
  std::vector<oracle::OracleReport> out;
  const QuadratureConfig cfg{s.panels, 4, 8, 11};
  for (double c : s.scales)
    for (TrigKind kind : {TrigKind::sine, TrigKind::cosine}) {
      const auto& o = oracle_table(s.N, c, kind);
      const SingularBlockTable p = singular_block_table(s.N, KernelScale(c), kind, cfg);
      for (int m = 0; m <= s.N; ++m)
        for (int n = 0; n <= s.N; ++n) {
          if ((m + n) % 2 != 0) continue;
          if (kind == TrigKind::sine && (m == 0 || n == 0)) continue;
          out.push_back(oracle::make_report(case_name("block", kind, c, m, n), o.values(m, n),
                                            p(m, n), s.block_tolerance, grid_text(o)));
        }
    }
  return out;
}

std::vector<oracle::OracleReport> parity_suite(const SuiteSettings& s) {
  std::vector<oracle::OracleReport> out;
  const QuadratureConfig cfg{s.panels, 4, 8, 11};
  const int per_table =
      (s.parity_cases + static_cast<int>(2 * s.scales.size()) - 1) /
      static_cast<int>(2 * s.scales.size());
  for (double c : s.scales)
    for (TrigKind kind : {TrigKind::sine, TrigKind::cosine}) {
      const auto& o = oracle_table(s.N, c, kind);
      const SingularBlockTable p = singular_block_table(s.N, KernelScale(c), kind, cfg);
      double even = 0.0;
      for (int m = 0; m <= s.N; ++m)
        for (int n = 0; n <= s.N; ++n)
          if ((m + n) % 2 == 0) even = std::max(even, std::abs(o.values(m, n)));
      int taken = 0;
      for (int j = 1; j < s.N && taken < per_table; ++j) {
        if (static_cast<int>(out.size()) >= s.parity_cases) return out;
        const int m = j % 2 == 1 ? j : j + 1, n = j % 2 == 1 ? j + 1 : j;
        oracle::OracleReport r;
        r.case_id = case_name("parity", kind, c, m, n);
        r.oracle_value = o.values(m, n);
        r.production_value = p(m, n);
        r.abs_error = std::abs(r.oracle_value);
        r.rel_error = even > 0.0 ? r.abs_error / even : r.abs_error;
        r.grid = grid_text(o);
        r.passed = r.production_value == Complex(0.0) && r.rel_error <= s.parity_tolerance;
        out.push_back(r);
        ++taken;
      }
    }
  return out;
}

std::vector<oracle::OracleReport> tridiagonal_suite(const SuiteSettings& s) {
  std::vector<oracle::OracleReport> out;
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> width(0.5, 2.0), thick(0.1, 1.0), re(0.5, 10.0),
      im(0.0, 2.0), coin(0.0, 1.0);
  std::uniform_int_distribution<int> layers(2, s.max_layers), mode(0, 10);
  int made = 0, attempts = 0;
  while (made < s.stacks && attempts < 20 * s.stacks) {
    ++attempts;
    const Polarization pol = made % 2 == 0 ? Polarization::tm : Polarization::te;
    ProblemSpec spec;
    spec.polarization = pol;
    spec.wave.kappa0 = 1.0;
    Cavity c;
    c.a = 0.0;
    c.b = width(rng);
    double y = 0.0;
    const int L = layers(rng);
    for (int l = 0; l < L; ++l) {
      const double yb = y - thick(rng);
      const Complex kappa = coin(rng) < 0.5 ? Complex(re(rng), 0.0) : Complex(re(rng), im(rng));
      c.layers.push_back(Layer{y, yb, kappa});
      y = yb;
    }
    spec.cavities = {c};
    int n = mode(rng);
    if (pol == Polarization::tm && n == 0) n = 1;
    try {
      const ProblemSpec v = validate(spec);
      const Cavity& cav = v.cavities.front();
      const ModeCoefficients mc = mode_coefficients(cav, n);
      const TridiagonalSystem sys =
          pol == Polarization::tm ? connection_system_tm(mc) : connection_system_te(cav, mc);
      if (sys.diag.empty()) continue;
      const std::string id = std::string("tridiag_") + (pol == Polarization::tm ? "tm" : "te") +
                             "_L" + std::to_string(L) + "_n" + std::to_string(n) + "_" +
                             std::to_string(made);
      out.push_back(oracle::dense_tridiag_check(sys, id, s.tridiag_tolerance));
      ++made;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::modal_resonance && e.kind() != ErrorKind::connection_resonance)
        throw;
    }
  }
  return out;
}

std::vector<oracle::OracleReport> fd_suite(const SuiteSettings&) {
  std::vector<oracle::OracleReport> out;
  for (Polarization pol : {Polarization::tm, Polarization::te}) {
    const Solved sv = solve(example1(pol));
    oracle::FdReport fd =
        oracle::fd_interior_check(sv.spec, sv.tables, sv.solution, {1e-2, 5e-3, 2.5e-3});
    fd.report.case_id = std::string("fd_example1_") + (pol == Polarization::tm ? "tm" : "te");
    out.push_back(fd.report);
  }
  return out;
}

}  // namespace cavity::tools
