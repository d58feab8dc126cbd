#include "cavity/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "cavity/special_functions.hpp"

namespace cavity::oracle {
namespace {

// Breakpoints on [0, L] shrinking geometrically toward 0, with long panels
// split so that none exceeds max_panel.
std::vector<double> graded_breaks(double L, int levels, double ratio, double max_panel) {
  std::vector<double> geo{0.0};
  for (int j = levels; j >= 0; --j) geo.push_back(L * std::pow(ratio, j));
  std::vector<double> out{0.0};
  for (std::size_t i = 1; i < geo.size(); ++i) {
    const double a = geo[i - 1], b = geo[i];
    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / max_panel)));
    for (int p = 1; p <= parts; ++p) out.push_back(a + (b - a) * p / parts);
  }
  return out;
}

struct Line {
  std::vector<double> x;
  std::vector<double> w;
};

void fill(Line& line, const std::vector<double>& breaks, const Rule& rule, bool mirror, double L) {
  for (std::size_t i = 1; i < breaks.size(); ++i) {
    const double a = breaks[i - 1], b = breaks[i];
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t j = 0; j < rule.x.size(); ++j) {
      const double x = mid + half * rule.x[j];
      line.x.push_back(mirror ? L - x : x);
      line.w.push_back(half * rule.w[j]);
    }
  }
}

// [0, L] graded toward 0 (toward_end = false) or toward both ends.
Line graded_line(double L, const GradedOptions& opt, int refinement, bool both_ends) {
  const Rule rule = golub_welsch(opt.points);
  const int levels = opt.levels + 2 * refinement;
  const double max_panel = opt.max_panel / std::pow(2.0, refinement);
  Line line;
  if (both_ends) {
    const auto br = graded_breaks(0.5 * L, levels, opt.ratio, max_panel);
    fill(line, br, rule, false, L);
    fill(line, br, rule, true, L);
  } else {
    fill(line, graded_breaks(L, levels, opt.ratio, max_panel), rule, false, L);
  }
  return line;
}

double relative_change(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, double floor) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / std::max(std::abs(b(i, j)), floor));
  return worst;
}

}  // namespace

OracleReport make_report(std::string case_id, Complex oracle_value, Complex production_value,
                         double tolerance, std::string grid) {
  OracleReport r;
  r.case_id = std::move(case_id);
  r.oracle_value = oracle_value;
  r.production_value = production_value;
  r.abs_error = std::abs(oracle_value - production_value);
  r.rel_error = std::abs(oracle_value) > 0.0 ? r.abs_error / std::abs(oracle_value) : r.abs_error;
  r.grid = std::move(grid);
  r.passed = r.rel_error <= tolerance;
  return r;
}

Rule golub_welsch(int q) {
  if (q < 1) throw Error(ErrorKind::domain, "rule needs at least one point");
  static std::mutex mutex;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(q, q);
  for (int k = 1; k < q; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k - 1, k) = J(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(J);
  Rule r;
  for (int i = 0; i < q; ++i) {
    r.x.push_back(eig.eigenvalues()(i));
    const double v = eig.eigenvectors()(0, i);
    r.w.push_back(2.0 * v * v);
  }
  cache.emplace(q, r);
  return r;
}

PointSet graded_square(const GradedOptions& opt, int refinement) {
  const double L = 2.0 * kPi;
  const Line outer = graded_line(L, opt, refinement, true);
  PointSet ps;
  for (std::size_t i = 0; i < outer.x.size(); ++i) {
    const double s = outer.x[i];
    // t < s and t > s, each with the distance |t - s| graded toward 0.
    for (int side = 0; side < 2; ++side) {
      const double len = side == 0 ? s : L - s;
      if (len <= 0.0) continue;
      const Line inner = graded_line(len, opt, refinement, false);
      for (std::size_t j = 0; j < inner.x.size(); ++j) {
        ps.s.push_back(s);
        ps.t.push_back(side == 0 ? s - inner.x[j] : s + inner.x[j]);
        ps.w.push_back(outer.w[i] * inner.w[j]);
        ps.r.push_back(inner.x[j]);
      }
    }
  }
  return ps;
}

GradedResult graded_singular_integral(const std::function<Complex(double, double)>& f,
                                      const GradedOptions& opt) {
  auto evaluate = [&](int r) {
    const PointSet ps = graded_square(opt, r);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < ps.s.size(); ++i) sum += ps.w[i] * f(ps.s[i], ps.t[i]);
    return std::make_pair(sum, ps.s.size());
  };
  auto [prev, count] = evaluate(0);
  for (int r = 1; r <= opt.max_refinements; ++r) {
    auto [cur, n] = evaluate(r);
    const double change = std::abs(cur - prev);
    if (change <= opt.tol * std::max(std::abs(cur), opt.scale)) return {cur, change, r, n};
    prev = cur;
    count = n;
  }
  throw Error(ErrorKind::non_convergence,
              "graded_singular_integral: no agreement after " +
                  std::to_string(opt.max_refinements) + " refinements (" +
                  std::to_string(count) + " points)");
}

GradedResult graded_endpoint_integral(const std::function<Complex(double)>& f, double a, double b,
                                      const GradedOptions& opt) {
  auto evaluate = [&](int r) {
    const Line line = graded_line(b - a, opt, r, false);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < line.x.size(); ++i) sum += line.w[i] * f(a + line.x[i]);
    return std::make_pair(sum, line.x.size());
  };
  auto [prev, count] = evaluate(0);
  for (int r = 1; r <= opt.max_refinements; ++r) {
    auto [cur, n] = evaluate(r);
    const double change = std::abs(cur - prev);
    if (change <= opt.tol * std::max(std::abs(cur), opt.scale)) return {cur, change, r, n};
    prev = cur;
    count = n;
  }
  throw Error(ErrorKind::non_convergence, "graded_endpoint_integral: no agreement after " +
                                              std::to_string(opt.max_refinements) +
                                              " refinements");
}

BlockTableResult singular_block_table(int N, double c, TrigKind kind, const GradedOptions& opt) {
  auto evaluate = [&](int r) {
    const PointSet ps = graded_square(opt, r);
    const Eigen::Index P = static_cast<Eigen::Index>(ps.s.size());
    Eigen::MatrixXcd A(N + 1, P);
    Eigen::MatrixXd B(P, N + 1);
    for (Eigen::Index i = 0; i < P; ++i) {
      const Complex k = ps.w[i] * special::hankel1_0(c * ps.r[i]);
      for (int n = 0; n <= N; ++n) {
        const double ts = kind == TrigKind::sine ? std::sin(0.5 * n * ps.s[i])
                                                 : std::cos(0.5 * n * ps.s[i]);
        const double tt = kind == TrigKind::sine ? std::sin(0.5 * n * ps.t[i])
                                                 : std::cos(0.5 * n * ps.t[i]);
        A(n, i) = k * ts;
        B(i, n) = tt;
      }
    }
    Eigen::MatrixXcd v = A * B.cast<Complex>();
    return std::make_pair(Eigen::MatrixXcd(0.5 * (v + v.transpose())), ps.s.size());
  };
  auto [prev, count] = evaluate(0);
  for (int r = 1; r <= opt.max_refinements; ++r) {
    auto [cur, n] = evaluate(r);
    const double floor = std::max(opt.scale, 1e-6 * cur.cwiseAbs().maxCoeff());
    const double change = relative_change(cur, prev, floor);
    if (change <= opt.tol) return {cur, change, r, n};
    prev = cur;
    count = n;
  }
  throw Error(ErrorKind::non_convergence, "oracle singular_block_table: no agreement after " +
                                              std::to_string(opt.max_refinements) +
                                              " refinements");
}

OracleReport dense_tridiag_check(const TridiagonalSystem& sys, const std::string& case_id,
                                 double tolerance) {
  const auto m = static_cast<Eigen::Index>(sys.diag.size());
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(m, m);
  Eigen::VectorXcd rhs(m);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    A(i, i) = sys.diag[i];
    rhs(i) = sys.rhs[i];
    if (i + 1 < m) A(i, i + 1) = A(i + 1, i) = sys.off[i];
  }
  scale = A.cwiseAbs().maxCoeff();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
  lu.setThreshold(1e-14);
  if (!lu.isInvertible() || std::abs(lu.matrixLU()(m - 1, m - 1)) <= 1e-14 * scale)
    throw Error(ErrorKind::connection_resonance,
                "dense re-solve: singular connection system" +
                    (case_id.empty() ? std::string() : " (" + case_id + ")"));
  const Eigen::VectorXcd dense = lu.solve(rhs);
  const std::vector<Complex> fast = solve_tridiagonal(sys);
  double dev = 0.0, mag = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    dev = std::max(dev, std::abs(dense(i) - fast[i]));
    mag = std::max(mag, std::abs(dense(i)));
  }
  OracleReport r;
  r.case_id = case_id;
  r.oracle_value = m > 0 ? Complex(dense(0)) : Complex(0.0);
  r.production_value = m > 0 ? fast[0] : Complex(0.0);
  r.abs_error = dev;
  r.rel_error = mag > 0.0 ? dev / mag : dev;
  r.grid = "L=" + std::to_string(m);
  r.passed = r.rel_error <= tolerance;
  return r;
}

double fitted_order(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = std::min(h.size(), err.size());
  if (n < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace cavity::oracle
