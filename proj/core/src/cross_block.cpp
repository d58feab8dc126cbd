#include "cavity/cross_block.hpp"

#include <algorithm>
#include <cmath>

#include "cavity/gauss.hpp"
#include "cavity/special_functions.hpp"

namespace cavity {
namespace {

// Uniform panels on [0, w]; when the gap is shorter than a panel, the panel
// at the facing end is halved repeatedly until its last piece fits the gap.
QuadPoints aperture_points(double w, int panels, double gap, bool toward_end,
                           const GaussRule& rule) {
  const double h = w / panels;
  std::vector<double> br;
  for (int p = 0; p <= panels; ++p) br.push_back(h * p);
  br.back() = w;
  if (gap < h) {
    std::vector<double> fine;
    double len = h;
    while (len > gap) {
      len *= 0.5;
      fine.push_back(len);
    }
    // distances from the facing end: h, h/2, ..., len, 0
    std::vector<double> cuts;
    for (double d : fine) cuts.push_back(toward_end ? w - d : d);
    br.insert(br.end(), cuts.begin(), cuts.end());
    std::sort(br.begin(), br.end());
  }
  QuadPoints pts;
  for (std::size_t i = 1; i < br.size(); ++i) append_panel(pts, br[i - 1], br[i], rule);
  return pts;
}

Eigen::MatrixXd modes(const QuadPoints& p, double w, int N, TrigKind kind) {
  Eigen::MatrixXd out(p.size(), N + 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int n = 0; n <= N; ++n) {
      const double arg = n * kPi * p.x[i] / w;
      out(i, n) = kind == TrigKind::sine ? std::sin(arg) : std::cos(arg);
    }
  return out;
}

}  // namespace

double cavity_gap(const Cavity& a, const Cavity& b) {
  return a.b <= b.a ? b.a - a.b : a.a - b.b;
}

CrossBlockTable cross_block_table(const Cavity& row, const Cavity& col, double kappa0, int N,
                                  const QuadratureConfig& cfg, bool sine, bool cosine) {
  const double gap = cavity_gap(row, col);
  if (!(gap > 0.0)) throw Error(ErrorKind::domain, "cross_block needs disjoint cavities");
  const double wr = row.b - row.a, wc = col.b - col.a;
  const bool row_left = row.b <= col.a;
  const GaussRule rule = gauss_rule(cfg.points_per_panel);
  const QuadPoints px = aperture_points(wr, cfg.panels, gap, row_left, rule);
  const QuadPoints py = aperture_points(wc, cfg.panels, gap, !row_left, rule);
  Eigen::MatrixXcd K(px.size(), py.size());
  for (std::size_t i = 0; i < px.size(); ++i)
    for (std::size_t j = 0; j < py.size(); ++j) {
      const double r = std::abs(px.x[i] + row.a - py.x[j] - col.a);
      K(i, j) = px.w[i] * py.w[j] * special::hankel1_0(kappa0 * r);
    }
  CrossBlockTable t;
  if (sine)
    t.sine = modes(px, wr, N, TrigKind::sine).transpose().cast<Complex>() * K *
             modes(py, wc, N, TrigKind::sine).cast<Complex>();
  if (cosine)
    t.cosine = modes(px, wr, N, TrigKind::cosine).transpose().cast<Complex>() * K *
               modes(py, wc, N, TrigKind::cosine).cast<Complex>();
  return t;
}

Complex cross_block(int m, int n, const Cavity& row, const Cavity& col, double kappa0,
                    TrigKind kind, const QuadratureConfig& cfg) {
  if (m < 0 || n < 0) throw Error(ErrorKind::domain, "mode indices must be non-negative");
  const auto t = cross_block_table(row, col, kappa0, std::max(m, n), cfg,
                                   kind == TrigKind::sine, kind == TrigKind::cosine);
  return kind == TrigKind::sine ? t.sine(m, n) : t.cosine(m, n);
}

}  // namespace cavity
