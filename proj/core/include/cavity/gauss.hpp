#pragma once

#include <vector>

#include "cavity/types.hpp"

namespace cavity {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_rule(int q);

/// Long double nodes and weights, used by the moment integrals.
struct GaussRuleLd {
  std::vector<long double> nodes;
  std::vector<long double> weights;
};

GaussRuleLd gauss_rule_ld(int q);

/// Flattened composite rule: nodes and weights on [a, b].
struct QuadPoints {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const noexcept { return x.size(); }
};

QuadPoints composite_points(double a, double b, int panels, const GaussRule& rule);

/// Appends the rule mapped to [a, b].
void append_panel(QuadPoints& out, double a, double b, const GaussRule& rule);

template <class F>
auto composite_integral_1d(F&& f, double a, double b, int panels, const GaussRule& rule) {
  const QuadPoints p = composite_points(a, b, panels, rule);
  decltype(f(a)) sum{};
  for (std::size_t i = 0; i < p.size(); ++i) sum += p.w[i] * f(p.x[i]);
  return sum;
}

/// Tensor product composite rule over [0, 2 pi]^2, f(s, t).
template <class F>
auto composite_integral_2d(F&& f, int panels, const GaussRule& rule) {
  const QuadPoints p = composite_points(0.0, 2.0 * kPi, panels, rule);
  decltype(f(0.0, 0.0)) sum{};
  for (std::size_t i = 0; i < p.size(); ++i) {
    decltype(f(0.0, 0.0)) row{};
    for (std::size_t j = 0; j < p.size(); ++j) row += p.w[j] * f(p.x[i], p.x[j]);
    sum += p.w[i] * row;
  }
  return sum;
}

}  // namespace cavity
