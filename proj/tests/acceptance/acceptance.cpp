// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "cavity/config_io.hpp"
#include "cavity/oracle.hpp"
#include "cavity/postprocess.hpp"
#include "cavity_tools/commands.hpp"

using namespace cavity;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = CAVITY_CONFIG_DIR;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [fail]");
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int failed(const std::vector<oracle::OracleReport>& r) {
  int n = 0;
  for (const auto& x : r) n += !x.passed;
  return n;
}

double worst_rel(const std::vector<oracle::OracleReport>& r) {
  double w = 0.0;
  for (const auto& x : r) w = std::max(w, x.rel_error);
  return w;
}

Verdict convergence() {
  Verdict v;
  const auto t0 = Clock::now();
  for (const char* name : {"example1_tm.json", "example1_te.json"}) {
    const tools::ConvergenceTable t = tools::convergence_table(load_spec(kConfigs / name), 5, 16);
    v.check(t.order >= 7.5, std::string(name) + " order " + fmt("%.2f", t.order));
  }
  const double dt = seconds_since(t0);
  v.check(dt <= 120.0, "time " + fmt("%.1f", dt) + " s");
  return v;
}

Verdict parity() {
  Verdict v;
  const auto r = tools::parity_suite(tools::suite_settings(tools::ToleranceProfile::strict));
  v.check(r.size() >= 30 && failed(r) == 0,
          std::to_string(r.size() - failed(r)) + "/" + std::to_string(r.size()) + " odd cases");
  return v;
}

Verdict oracle_equivalence() {
  Verdict v;
  const auto t0 = Clock::now();
  const auto r = tools::singular_block_suite(tools::suite_settings(tools::ToleranceProfile::strict));
  const double dt = seconds_since(t0);
  v.check(r.size() >= 300 && failed(r) == 0,
          std::to_string(r.size() - failed(r)) + "/" + std::to_string(r.size()) + " blocks, worst " +
              fmt("%.2e", worst_rel(r)));
  v.check(dt <= 300.0, "time " + fmt("%.1f", dt) + " s");
  return v;
}

Cavity stack(double w, const std::vector<std::pair<double, Complex>>& layers) {
  ProblemSpec s;
  Cavity c;
  c.a = 0.0;
  c.b = w;
  for (const auto& [bottom, k] : layers) c.layers.push_back(Layer{0.0, bottom, k});
  s.cavities = {c};
  return validate(s).cavities.front();
}

Verdict identities() {
  Verdict v;
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> re(-15.0, 15.0), im(0.0, 15.0), hd(-2.0, -0.05);
  double worst = 0.0;
  for (int i = 0; i < 10000;) {
    const Complex b(re(rng), im(rng));
    const double h = hd(rng);
    if (std::abs(std::sin(b * h)) < 1e-6) continue;
    const LayerCoeffs c = layer_coeffs(b, h);
    const double scale = std::max({std::abs(b * b), std::abs(c.a * c.a), 1e-300});
    worst = std::max(worst, std::abs(c.a * c.a - c.b * c.b - b * b) / scale);
    ++i;
  }
  const LayerCoeffs z = layer_coeffs(0.0, -0.5);
  v.check(worst <= 1e-12 && z.a * z.a - z.b * z.b == Complex(0.0),
          "a^2-b^2=beta^2 worst " + fmt("%.1e", worst));

  double split = 0.0;
  const Cavity one = stack(0.6, {{-0.9, 2.0}, {-1.4, Complex(3.0, 0.4)}});
  const Cavity two = stack(0.6, {{-0.5, 2.0}, {-0.9, 2.0}, {-1.2, Complex(3.0, 0.4)},
                                 {-1.4, Complex(3.0, 0.4)}});
  for (int n = 1; n <= 20; ++n) {
    split = std::max(split, rel(connection_tm(two, n).impedance, connection_tm(one, n).impedance));
    split = std::max(split, rel(connection_te(two, 2.0, n).impedance, connection_te(one, 2.0, n).impedance));
  }
  v.check(split <= 1e-11, "split " + fmt("%.1e", split));

  double single = 0.0;
  const double k0 = 1.5;
  const Cavity empty = stack(1.0, {{-1.5, k0}});
  for (int n = 0; n <= 30; ++n) {
    const Complex b = mode_coefficients(empty, n).beta[0];
    const Complex e = std::exp(2.0 * kI * b * 1.5);
    if (n >= 1) single = std::max(single, rel(connection_tm(empty, n).impedance, -kI * b * (1.0 + e) / (1.0 - e)));
    single = std::max(single, rel(connection_te(empty, k0, n).impedance, kI * b * (e - 1.0) / (1.0 + e)));
  }
  v.check(single <= 1e-12, "single layer " + fmt("%.1e", single));
  return v;
}

Verdict connection() {
  Verdict v;
  const auto r = tools::tridiagonal_suite(tools::suite_settings(tools::ToleranceProfile::strict));
  v.check(failed(r) == 0, std::to_string(r.size() - failed(r)) + "/" + std::to_string(r.size()) +
                              " stacks, worst " + fmt("%.1e", worst_rel(r)));
  return v;
}

Verdict fidelity() {
  Verdict v;
  const auto fd = tools::fd_suite(tools::suite_settings(tools::ToleranceProfile::strict));
  v.check(failed(fd) == 0, "fd " + std::to_string(fd.size() - failed(fd)) + "/" + std::to_string(fd.size()));

  double wall = 0.0, cont = 0.0, flux = 0.0;
  for (Polarization pol : {Polarization::tm, Polarization::te}) {
    ProblemSpec s = load_spec(kConfigs / (pol == Polarization::tm ? "example4_tm.json" : "example4_te.json"));
    const Solved sv = solve(s);
    const FieldEvaluator f(sv.spec, sv.tables, sv.solution);
    for (int k = 0; k < static_cast<int>(sv.spec.cavities.size()); ++k) {
      const Cavity& c = sv.spec.cavities[k];
      double peak = 0.0, edge = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double y = -c.depth * i / 100.0, x = std::min(c.b, c.a + c.width * i / 100.0);
        for (double t : {0.13, 0.5, 0.77}) peak = std::max(peak, std::abs(f(c.a + t * c.width, y, k)));
        edge = std::max({edge, std::abs(f(c.a, y, k)), std::abs(f(c.b, y, k)), std::abs(f(x, -c.depth, k))});
      }
      if (pol == Polarization::tm) wall = std::max(wall, edge / peak);
      for (std::size_t l = 0; l + 1 < c.layers.size(); ++l) {
        const double y = c.layers[l].y_bottom;
        const Complex ku = c.layers[l].kappa, kd = c.layers[l + 1].kappa;
        for (int i = 1; i < 20; ++i) {
          const double x = c.a + c.width * i / 20.0;
          if (pol == Polarization::tm) {
            const Complex up = f(x, y + 1e-14, k), dn = f(x, y - 1e-14, k);
            cont = std::max(cont, std::abs(up - dn) / peak);
          } else {
            const Complex up = f.dy(x, y + 1e-13, k) / (ku * ku), dn = f.dy(x, y - 1e-13, k) / (kd * kd);
            flux = std::max(flux, std::abs(up - dn) / std::max(1.0, std::abs(up)));
          }
        }
      }
    }
  }
  v.check(wall <= 1e-12, "TM walls " + fmt("%.1e", wall));
  v.check(cont <= 1e-10, "TM interfaces " + fmt("%.1e", cont));
  v.check(flux <= 1e-8, "TE flux " + fmt("%.1e", flux));
  return v;
}

Verdict resonances() {
  Verdict v;
  SingularBlockCache cache;
  const ProblemSpec single = load_spec(kConfigs / "example3_single.json");
  const std::vector<double> kappa = tools::kappa_grid(0.5, 9.0, 851);
  const EnhancementSpectrum e = enhancement_sweep(single, kappa, cache);
  std::vector<double> q;
  for (const auto& row : e.q) q.push_back(row[0]);
  const auto peaks = tools::prominent_peaks(q);
  for (int n = 0; n <= 2; ++n) {
    const double target = kPi / 2 + n * kPi;
    double best = 1e300, at = 0.0;
    for (std::size_t i : peaks)
      if (std::abs(kappa[i] - target) < best) {
        best = std::abs(kappa[i] - target);
        at = kappa[i];
      }
    v.check(best <= 0.05 * target, "n=" + std::to_string(n) + " peak " + fmt("%.2f", at) + " vs " +
                                       fmt("%.3f", target) + " (" + fmt("%.1f", 100 * best / target) + "%)");
  }

  const std::vector<double> desk = tools::kappa_grid(0.5, 1.6, 221);
  auto count = [&](const char* name, int k) {
    const EnhancementSpectrum s = enhancement_sweep(load_spec(kConfigs / name), desk, cache);
    std::vector<double> col;
    for (const auto& row : s.q) col.push_back(row[static_cast<std::size_t>(k)]);
    return tools::prominent_peaks(col).size();
  };
  const std::size_t isolated = count("example3_isolated.json", 0), pair = count("example3_pair.json", 1);
  v.check(isolated == 1, "isolated cavity " + std::to_string(isolated) + " peak(s)");
  v.check(pair == 2, "pair member " + std::to_string(pair) + " peaks");
  return v;
}

Verdict rcs() {
  Verdict v;
  const std::vector<double> phi = open_angles(181, 0.0, kPi);
  for (const char* kind : {"empty", "lossy"}) {
    SingularBlockCache cache;
    const std::string base = std::string("example2_") + kind;
    const RcsSweep a = backscatter_sweep(load_spec(kConfigs / (base + "_n150.json")), phi, cache);
    const ProblemSpec fine = load_spec(kConfigs / (base + "_n200.json"));
    const RcsSweep b = backscatter_sweep(fine, phi, cache);
    double worst = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      worst = std::max(worst, std::abs(a.sigma[i] - b.sigma[i]) / b.sigma[i]);
      peak = std::max(peak, b.sigma[i]);
    }
    v.check(worst < 0.01, std::string(kind) + " N150/200 " + fmt("%.1e", worst));
    const Solved sv = solve(with_incidence(fine, kPi / 2 - 1e-6), cache);
    const double lo = rcs_tm(sv.spec, sv.solution, 1e-6);
    const Solved sh = solve(with_incidence(fine, -kPi / 2 + 1e-6), cache);
    const double hi = rcs_tm(sh.spec, sh.solution, kPi - 1e-6);
    v.check(lo <= 1e-9 * peak && hi <= 1e-9 * peak,
            std::string(kind) + " ends " + fmt("%.1e", std::max(lo, hi) / peak));
  }
  return v;
}

Verdict example4() {
  Verdict v;
  for (const char* name : {"example4_tm.json", "example4_te.json"}) {
    const ProblemSpec coarse = load_spec(kConfigs / name);
    ProblemSpec fine = coarse;
    fine.N = 2 * coarse.N;
    const auto t0 = Clock::now();
    const Solved a = solve(coarse), b = solve(fine);
    const FieldEvaluator ea(a.spec, a.tables, a.solution), eb(b.spec, b.tables, b.solution);
    double worst = 0.0;
    for (int k = 0; k < static_cast<int>(coarse.cavities.size()); ++k) {
      const FieldMap da = diagonal_trace(ea, k), db = diagonal_trace(eb, k);
      double diff = 0.0, norm = 0.0;
      for (std::size_t i = 0; i < da.samples.size(); ++i) {
        diff += std::pow(std::abs(da.samples[i].value) - std::abs(db.samples[i].value), 2);
        norm += std::norm(db.samples[i].value);
      }
      worst = std::max(worst, std::sqrt(diff / norm));
    }
    const double dt = seconds_since(t0);
    v.check(worst < 0.01, std::string(name) + " N" + std::to_string(coarse.N) + "/" +
                              std::to_string(fine.N) + " trace " + fmt("%.2e", worst));
    v.check(dt <= 60.0, fmt("%.1f", dt) + " s");
  }
  return v;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"wall_time_s\"") == std::string::npos) out += line + "\n";
  return out;
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    const std::string body = slurp(e.path());
    files[name] = name == "manifest.json" ? without_wall_time(body) : body;
  }
  return files;
}

Verdict determinism() {
  Verdict v;
  const fs::path root = fs::temp_directory_path() / "cavity_acceptance_det";
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"solve", "solve --spec " + (kConfigs / "example4_te.json").string()},
      {"field", "field --spec " + (kConfigs / "example4_tm.json").string() + " --grid 21 21 --diagonal"},
      {"rcs", "rcs --spec " + (kConfigs / "example2_lossy_n150.json").string()},
      {"enhance", "enhance --spec " + (kConfigs / "example3_single.json").string()},
      {"convergence", "convergence --spec " + (kConfigs / "example1_te.json").string()},
      {"validate", "validate --tolerance-profile default"},
  };
  for (const auto& [name, args] : runs) {
    const fs::path out = root / name;
    std::map<std::string, std::string> first;
    bool same = true;
    for (int rep = 0; rep < 2; ++rep) {
      fs::remove_all(out);
      const std::string cmd = std::string(CAVITY_CLI) + " " + args + " --out " + out.string() + " > /dev/null";
      const int status = std::system(cmd.c_str());
      if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) same = false;
      const auto files = snapshot(out);
      if (rep == 0)
        first = files;
      else
        same = same && files == first && !files.empty();
    }
    v.check(same, name);
  }
  fs::remove_all(root);
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"convergence order", convergence},   {"parity", parity},
      {"oracle equivalence", oracle_equivalence}, {"algebraic identities", identities},
      {"connection solver", connection},   {"PDE and boundary fidelity", fidelity},
      {"enhancement resonances", resonances}, {"RCS", rcs},
      {"Example 4", example4},             {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("error: ") + e.what();
    }
    failures += !v.pass;
    std::printf("Criterion %zu (%s): %s  %s  [%.1f s]\n", i + 1, criteria[i].first.c_str(),
                v.pass ? "PASS" : "FAIL", v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
