#include "cavity/gauss.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>

namespace cavity {
namespace {

// Newton iteration on P_q from the Chebyshev-like initial guess; symmetric
// nodes are filled pairwise.
template <class Real>
void legendre_rule(int q, std::vector<Real>& x, std::vector<Real>& w) {
  x.assign(q, Real(0));
  w.assign(q, Real(0));
  const Real pi = Real(3.14159265358979323846264338327950288L);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    Real z = std::cos(pi * (Real(i) + Real(0.75)) / (Real(q) + Real(0.5)));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1;
      Real p1 = z;
      for (int k = 2; k <= q; ++k) {
        const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (z * p1 - p0) / (z * z - 1);
      const Real dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= std::numeric_limits<Real>::epsilon() * 2) {
        // one more pass to refresh the derivative at the converged node
        p0 = 1;
        p1 = z;
        for (int k = 2; k <= q; ++k) {
          const Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = q * (z * p1 - p0) / (z * z - 1);
        break;
      }
    }
    x[i] = -z;
    x[q - 1 - i] = z;
    w[i] = w[q - 1 - i] = 2 / ((1 - z * z) * dp * dp);
  }
  if (q % 2 == 1) x[q / 2] = 0;
}

}  // namespace

GaussRule gauss_rule(int q) {
  if (q < 2) throw Error(ErrorKind::domain, "Gauss rule needs at least 2 points");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  std::vector<long double> x, w;
  legendre_rule(q, x, w);
  GaussRule r;
  r.nodes.assign(x.begin(), x.end());
  r.weights.assign(w.begin(), w.end());
  cache.emplace(q, r);
  return r;
}

GaussRuleLd gauss_rule_ld(int q) {
  if (q < 2) throw Error(ErrorKind::domain, "Gauss rule needs at least 2 points");
  static std::mutex mutex;
  static std::map<int, GaussRuleLd> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  GaussRuleLd r;
  legendre_rule(q, r.nodes, r.weights);
  cache.emplace(q, r);
  return r;
}

void append_panel(QuadPoints& out, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    out.x.push_back(mid + half * rule.nodes[i]);
    out.w.push_back(half * rule.weights[i]);
  }
}

QuadPoints composite_points(double a, double b, int panels, const GaussRule& rule) {
  if (panels < 1) throw Error(ErrorKind::domain, "panel count must be positive");
  QuadPoints p;
  p.x.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  p.w.reserve(p.x.capacity());
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * h;
    const double hi = k + 1 == panels ? b : a + (k + 1) * h;
    append_panel(p, lo, hi, rule);
  }
  return p;
}

}  // namespace cavity
