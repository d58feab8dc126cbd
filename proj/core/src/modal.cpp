#include "cavity/modal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cavity {
namespace {

constexpr double kSmallArg = 1e-3;
constexpr double kDirectSinLimit = 30.0;

std::string where(int mode, int layer) {
  std::string s;
  if (mode >= 0) s += "mode n=" + std::to_string(mode);
  if (layer >= 0) s += (s.empty() ? "" : ", ") + std::string("layer ") + std::to_string(layer);
  return s.empty() ? "" : " (" + s + ")";
}

// a, b, profiles are even in beta; pick the root with Im >= 0 (Re >= 0 on ties).
Complex upper_branch(Complex z) {
  if (z.imag() < 0.0 || (z.imag() == 0.0 && z.real() < 0.0)) return -z;
  return z;
}

// sin(z) / z
Complex sinc(Complex z) {
  if (std::abs(z) < kSmallArg) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0 - z2 * z2 * z2 / 5040.0;
  }
  return std::sin(z) / z;
}

// sin(beta tau) / sin(beta d) and beta cos(beta tau) / sin(beta d)
struct Ratio {
  Complex value;
  Complex slope;
};

Ratio profile_ratio(Complex beta, double tau, double d) {
  const Complex x = beta * d;
  if (std::abs(x) < kSmallArg) {
    const Complex sd = sinc(x);
    return {(tau / d) * sinc(beta * tau) / sd, std::cos(beta * tau) / (d * sd)};
  }
  if (x.imag() < kDirectSinLimit) {
    const Complex s = std::sin(x);
    return {std::sin(beta * tau) / s, beta * std::cos(beta * tau) / s};
  }
  const Complex lead = std::exp(kI * beta * (d - tau));
  const Complex e_tau = std::exp(2.0 * kI * beta * tau);
  const Complex den = 1.0 - std::exp(2.0 * kI * x);
  return {lead * (1.0 - e_tau) / den, -kI * beta * lead * (1.0 + e_tau) / den};
}

}  // namespace

Complex beta(Complex kappa, double w, int n) {
  if (!(w > 0.0)) throw Error(ErrorKind::domain, "aperture width must be positive");
  if (n < 0) throw Error(ErrorKind::domain, "mode index must be non-negative");
  const double q = n * kPi / w;
  if (kappa.imag() == 0.0 && n > 0 && std::abs(kappa.real() / q - 1.0) <= 1e-14) return 0.0;
  return upper_branch(std::sqrt((kappa - q) * (kappa + q)));
}

LayerCoeffs layer_coeffs(Complex beta_value, double h, int mode, int layer) {
  if (!(h < 0.0)) throw Error(ErrorKind::domain, "layer thickness h must be negative");
  const double d = -h;
  const Complex b_ = upper_branch(beta_value);
  const Complex x = b_ * d;
  if (std::abs(x) < kSmallArg) {
    const Complex x2 = x * x;
    const Complex x4 = x2 * x2;
    const Complex a = (1.0 + x2 / 6.0 + 7.0 * x4 / 360.0 + 31.0 * x4 * x2 / 15120.0) / d;
    const Complex b = -(1.0 - x2 / 3.0 - x4 / 45.0 - 2.0 * x4 * x2 / 945.0) / d;
    return {a, b};
  }
  const Complex eps = std::exp(kI * x);
  const Complex eps2 = eps * eps;
  const Complex den = 1.0 - eps2;
  if (std::abs(den) <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)))
    throw Error(ErrorKind::modal_resonance,
                "sin(beta h) vanishes" + where(mode, layer));
  return {-2.0 * kI * b_ * eps / den, kI * b_ * (1.0 + eps2) / den};
}

ModeCoefficients mode_coefficients(const Cavity& cavity, int n) {
  const double w = cavity.b - cavity.a;
  ModeCoefficients mc;
  mc.n = n;
  for (std::size_t l = 0; l < cavity.layers.size(); ++l) {
    const Layer& layer = cavity.layers[l];
    const Complex bt = beta(layer.kappa, w, n);
    const LayerCoeffs c = layer_coeffs(bt, layer.h(), n, static_cast<int>(l) + 1);
    mc.beta.push_back(bt);
    mc.a.push_back(c.a);
    mc.b.push_back(c.b);
  }
  return mc;
}

std::vector<Complex> solve_tridiagonal(const TridiagonalSystem& sys, int mode) {
  const std::size_t m = sys.diag.size();
  if (sys.rhs.size() != m || (m > 0 && sys.off.size() != m - 1))
    throw Error(ErrorKind::domain, "tridiagonal system has inconsistent sizes");
  if (m == 0) return {};
  double scale = 0.0;
  for (const auto& v : sys.diag) scale = std::max(scale, std::abs(v));
  for (const auto& v : sys.off) scale = std::max(scale, std::abs(v));
  const double tiny = 1e-14 * scale;

  std::vector<Complex> c(m), d(m);
  Complex pivot = sys.diag[0];
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0) pivot = sys.diag[i] - sys.off[i - 1] * c[i - 1];
    if (!(std::abs(pivot) > tiny))
      throw Error(ErrorKind::connection_resonance,
                  "vanishing pivot in the connection system" + where(mode, -1));
    c[i] = i + 1 < m ? sys.off[i] / pivot : Complex{};
    d[i] = (sys.rhs[i] - (i > 0 ? sys.off[i - 1] * d[i - 1] : Complex{})) / pivot;
  }
  std::vector<Complex> x(m);
  x[m - 1] = d[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

TridiagonalSystem connection_system_tm(const ModeCoefficients& mc) {
  const std::size_t L = mc.a.size();
  TridiagonalSystem sys;
  if (L < 2) return sys;
  for (std::size_t l = 0; l + 1 < L; ++l) {
    sys.diag.push_back(mc.b[l] + mc.b[l + 1]);
    if (l + 2 < L) sys.off.push_back(mc.a[l + 1]);
    sys.rhs.push_back(l == 0 ? 1.0 : 0.0);
  }
  return sys;
}

TridiagonalSystem connection_system_te(const Cavity& cavity, const ModeCoefficients& mc) {
  const std::size_t L = mc.a.size();
  TridiagonalSystem sys;
  for (std::size_t l = 0; l < L; ++l) {
    const Complex k2 = cavity.layers[l].kappa * cavity.layers[l].kappa;
    Complex diag = mc.b[l] / k2;
    if (l + 1 < L) {
      const Complex k2n = cavity.layers[l + 1].kappa * cavity.layers[l + 1].kappa;
      diag += mc.b[l + 1] / k2n;
      sys.off.push_back(mc.a[l + 1] / k2n);
    }
    sys.diag.push_back(diag);
    sys.rhs.push_back(l == 0 ? 1.0 : 0.0);
  }
  return sys;
}

ConnectionSolution connection_tm(const ModeCoefficients& mc) {
  ConnectionSolution sol;
  sol.u_hat = solve_tridiagonal(connection_system_tm(mc), mc.n);
  sol.impedance = -mc.b[0];
  if (!sol.u_hat.empty()) sol.impedance += mc.a[0] * mc.a[0] * sol.u_hat[0];
  return sol;
}

ConnectionSolution connection_tm(const Cavity& cavity, int n) {
  if (n < 1) throw Error(ErrorKind::domain, "TM modes start at n = 1");
  return connection_tm(mode_coefficients(cavity, n));
}

ConnectionSolution connection_te(const Cavity& cavity, double kappa0, const ModeCoefficients& mc) {
  ConnectionSolution sol;
  sol.u_hat = solve_tridiagonal(connection_system_te(cavity, mc), mc.n);
  const Complex k1 = cavity.layers[0].kappa;
  const Complex k1sq = k1 * k1;
  const Complex ratio = (kappa0 * kappa0) / k1sq;
  sol.impedance = ratio * (mc.a[0] * mc.a[0] / k1sq * sol.u_hat[0] - mc.b[0]);
  return sol;
}

ConnectionSolution connection_te(const Cavity& cavity, double kappa0, int n) {
  return connection_te(cavity, kappa0, mode_coefficients(cavity, n));
}

ModalTables build_modal_tables(const ProblemSpec& spec) {
  ModalTables t;
  t.polarization = spec.polarization;
  t.first_mode = first_mode(spec.polarization);
  for (std::size_t k = 0; k < spec.cavities.size(); ++k) {
    const Cavity& cav = spec.cavities[k];
    std::vector<ModeTable> modes;
    for (int n = t.first_mode; n <= spec.N; ++n) {
      try {
        ModeTable mt;
        mt.coeffs = mode_coefficients(cav, n);
        mt.connection = spec.polarization == Polarization::tm
                            ? connection_tm(mt.coeffs)
                            : connection_te(cav, spec.wave.kappa0, mt.coeffs);
        modes.push_back(std::move(mt));
      } catch (const Error& e) {
        throw Error(e.kind(), "cavity " + std::to_string(k) + ": " + e.message());
      }
    }
    t.cavities.push_back(std::move(modes));
  }
  return t;
}

std::vector<Complex> interior_coefficients(Polarization pol, const Cavity& cavity,
                                           const ModeTable& table, Complex u0) {
  const std::size_t L = cavity.layers.size();
  std::vector<Complex> u(L + 1, Complex{});
  u[0] = u0;
  const Complex a1 = table.coeffs.a[0];
  if (pol == Polarization::tm) {
    for (std::size_t l = 1; l < L; ++l) u[l] = -a1 * u0 * table.connection.u_hat[l - 1];
  } else {
    const Complex k1 = cavity.layers[0].kappa;
    for (std::size_t l = 1; l <= L; ++l)
      u[l] = -(a1 / (k1 * k1)) * u0 * table.connection.u_hat[l - 1];
  }
  return u;
}

Complex vertical_profile(const Layer& layer, Complex beta_value, Complex u_top, Complex u_bottom,
                         double y) {
  const double d = layer.y_top - layer.y_bottom;
  const double tau = std::clamp(y - layer.y_bottom, 0.0, d);
  const Complex bt = upper_branch(beta_value);
  layer_coeffs(bt, layer.h());
  const Ratio up = profile_ratio(bt, tau, d);
  const Ratio down = profile_ratio(bt, d - tau, d);
  return u_top * up.value + u_bottom * down.value;
}

Complex vertical_profile_dy(const Layer& layer, Complex beta_value, Complex u_top,
                            Complex u_bottom, double y) {
  const double d = layer.y_top - layer.y_bottom;
  const double tau = std::clamp(y - layer.y_bottom, 0.0, d);
  const Complex bt = upper_branch(beta_value);
  const Ratio up = profile_ratio(bt, tau, d);
  const Ratio down = profile_ratio(bt, d - tau, d);
  return u_top * up.slope - u_bottom * down.slope;
}

}  // namespace cavity
