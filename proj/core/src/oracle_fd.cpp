#include <algorithm>
#include <cmath>
#include <random>

#include "cavity/oracle.hpp"
#include "cavity/postprocess.hpp"

namespace cavity::oracle {

FdReport fd_interior_check(const ProblemSpec& spec, const ModalTables& tables,
                           const ApertureSolution& solution, const std::vector<double>& steps,
                           int points_per_layer, unsigned seed) {
  if (steps.empty()) throw Error(ErrorKind::domain, "fd_interior_check needs at least one step");
  const FieldEvaluator eval(spec, tables, solution);
  const double margin = 2.0 * *std::max_element(steps.begin(), steps.end());
  std::mt19937_64 rng(seed);
  struct Point {
    double x, y;
    int k;
    Complex kappa2;
  };
  std::vector<Point> pts;
  for (std::size_t k = 0; k < spec.cavities.size(); ++k) {
    const Cavity& c = spec.cavities[k];
    for (const Layer& layer : c.layers) {
      if (c.b - c.a <= 2 * margin || layer.y_top - layer.y_bottom <= 2 * margin) continue;
      std::uniform_real_distribution<double> ux(c.a + margin, c.b - margin);
      std::uniform_real_distribution<double> uy(layer.y_bottom + margin, layer.y_top - margin);
      for (int i = 0; i < points_per_layer; ++i)
        pts.push_back({ux(rng), uy(rng), static_cast<int>(k), layer.kappa * layer.kappa});
    }
  }
  FdReport out;
  double umax = 0.0;
  for (const auto& p : pts) umax = std::max(umax, std::abs(eval(p.x, p.y, p.k)));
  for (double h : steps) {
    double worst = 0.0;
    for (const auto& p : pts) {
      const Complex u = eval(p.x, p.y, p.k);
      const Complex lap = (eval(p.x + h, p.y, p.k) + eval(p.x - h, p.y, p.k) +
                           eval(p.x, p.y + h, p.k) + eval(p.x, p.y - h, p.k) - 4.0 * u) /
                          (h * h);
      worst = std::max(worst, std::abs(lap + p.kappa2 * u));
    }
    out.steps.push_back(h);
    out.residuals.push_back(umax > 0.0 ? worst / umax : worst);
  }
  const bool all_zero = std::all_of(out.residuals.begin(), out.residuals.end(),
                                    [](double r) { return r == 0.0; });
  out.order = all_zero ? 0.0 : fitted_order(out.steps, out.residuals);
  out.report.case_id = "fd_interior";
  out.report.abs_error = out.residuals.back();
  out.report.rel_error = out.residuals.back();
  out.report.grid = "points=" + std::to_string(pts.size()) + ";order=" + std::to_string(out.order);
  out.report.passed = all_zero || out.order >= 1.9;
  return out;
}

}  // namespace cavity::oracle
