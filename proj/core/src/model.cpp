#include "cavity/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cavity {
namespace {

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw Error(ErrorKind::validation, field + ": " + why);
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ProblemSpec validate(ProblemSpec spec) {
  auto& w = spec.wave;
  require(std::isfinite(w.kappa0) && w.kappa0 > 0.0, "kappa0", "must be positive");
  require(std::isfinite(w.theta) && std::abs(w.theta) < 0.5 * kPi, "theta",
          "must lie in (-pi/2, pi/2)");
  w.alpha = w.kappa0 * std::sin(w.theta);
  w.beta = w.kappa0 * std::cos(w.theta);
  require(w.beta > 0.0, "theta", "grazing incidence is not supported");

  require(spec.N >= 1, "N", "must be at least 1");
  const auto& q = spec.quad;
  require(q.panels >= 1, "quadrature.panels", "must be positive");
  require(q.points_per_panel >= 2, "quadrature.points_per_panel", "must be at least 2");
  require(q.bessel_K >= 1, "quadrature.bessel_K", "must be at least 1");
  require(q.lift_threshold >= 8, "quadrature.lift_threshold", "must be at least 8");

  require(!spec.cavities.empty(), "cavities", "at least one cavity is required");
  for (std::size_t k = 0; k < spec.cavities.size(); ++k) {
    auto& c = spec.cavities[k];
    const std::string base = "cavities[" + std::to_string(k) + "]";
    require(std::isfinite(c.a) && std::isfinite(c.b) && c.a < c.b, base + ".b",
            "aperture requires a < b");
    require(!c.layers.empty(), base + ".layers", "at least one layer is required");
    double top = 0.0;
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
      auto& layer = c.layers[l];
      const std::string lf = base + ".layers[" + std::to_string(l) + "]";
      layer.y_top = top;
      require(std::isfinite(layer.y_bottom) && layer.y_bottom < layer.y_top,
              lf + ".y_bottom", "interfaces must decrease downward");
      require(finite(layer.kappa), lf + ".kappa", "must be finite");
      require(layer.kappa.imag() >= 0.0, lf + ".kappa", "imaginary part must be >= 0");
      require(layer.kappa != Complex{0.0, 0.0}, lf + ".kappa", "must be nonzero");
      top = layer.y_bottom;
    }
    c.width = c.b - c.a;
    c.depth = -c.layers.back().y_bottom;
  }

  std::vector<std::size_t> order(spec.cavities.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](auto i, auto j) { return spec.cavities[i].a < spec.cavities[j].a; });
  double widest = 0.0;
  for (const auto& c : spec.cavities) widest = std::max(widest, c.width);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& left = spec.cavities[order[i - 1]];
    const auto& right = spec.cavities[order[i]];
    const double gap = right.a - left.b;
    require(gap > kMinGapRatio * widest,
            "cavities[" + std::to_string(order[i]) + "].a",
            gap < 0.0 ? "overlaps cavities[" + std::to_string(order[i - 1]) + "]"
                      : "touches cavities[" + std::to_string(order[i - 1]) + "]");
  }
  return spec;
}

Complex wavenumber_from_material(double omega, Complex eps, double mu, double sigma) {
  const Complex k2 = omega * omega * eps * mu + kI * omega * mu * sigma;
  Complex k = std::sqrt(k2);
  if (k.imag() < 0.0 || (k.imag() == 0.0 && k.real() < 0.0)) k = -k;
  return k;
}

ProblemSpec with_scaled_frequency(const ProblemSpec& spec, double kappa0_new) {
  ProblemSpec out = spec;
  const double ratio = kappa0_new / spec.wave.kappa0;
  out.wave.kappa0 = kappa0_new;
  for (auto& c : out.cavities)
    for (auto& l : c.layers) l.kappa *= ratio;
  return validate(std::move(out));
}

ProblemSpec with_incidence(const ProblemSpec& spec, double theta) {
  ProblemSpec out = spec;
  out.wave.theta = theta;
  return validate(std::move(out));
}

}  // namespace cavity
