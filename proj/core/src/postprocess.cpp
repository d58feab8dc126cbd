#include "cavity/postprocess.hpp"

#include <algorithm>
#include <cmath>

#include "cavity/gauss.hpp"

namespace cavity {

FieldEvaluator::FieldEvaluator(const ProblemSpec& spec, const ModalTables& tables,
                               const ApertureSolution& solution)
    : spec_(spec) {
  const Layout& lay = solution.layout;
  for (int k = 0; k < lay.cavities; ++k) {
    const Cavity& c = spec_.cavities[k];
    std::vector<Complex> betas;
    std::vector<std::vector<Complex>> coeffs;
    for (int n = lay.first_mode; n <= spec_.N; ++n) {
      const ModeTable& t = tables.at(k, n);
      betas.insert(betas.end(), t.coeffs.beta.begin(), t.coeffs.beta.end());
      coeffs.push_back(interior_coefficients(spec_.polarization, c, t, solution.u0(k, n)));
    }
    beta_.push_back(std::move(betas));
    interf_.push_back(std::move(coeffs));
  }
}

int FieldEvaluator::locate(double x, double y) const {
  for (std::size_t k = 0; k < spec_.cavities.size(); ++k) {
    const Cavity& c = spec_.cavities[k];
    if (x >= c.a && x <= c.b && y <= 0.0 && y >= -c.depth) return static_cast<int>(k);
  }
  return -1;
}

int FieldEvaluator::layer_of(int k, double y) const {
  const Cavity& c = spec_.cavities.at(k);
  for (std::size_t l = 0; l < c.layers.size(); ++l)
    if (y >= c.layers[l].y_bottom) return static_cast<int>(l) + 1;
  return static_cast<int>(c.layers.size());
}

Complex FieldEvaluator::evaluate(double x, double y, int k, bool derivative) const {
  if (k < 0 || k >= static_cast<int>(spec_.cavities.size()))
    throw Error(ErrorKind::domain, "cavity index out of range");
  const Cavity& c = spec_.cavities[k];
  if (x < c.a || x > c.b || y > 0.0 || y < -c.depth)
    throw Error(ErrorKind::domain, "point outside cavity " + std::to_string(k));
  const int l = layer_of(k, y) - 1;
  const Layer& layer = c.layers[l];
  const std::size_t L = c.layers.size();
  const double w = c.b - c.a;
  const bool tm = spec_.polarization == Polarization::tm;
  const int first = first_mode(spec_.polarization);
  Complex sum = 0.0;
  for (std::size_t i = 0; i < interf_[k].size(); ++i) {
    const int n = first + static_cast<int>(i);
    const auto& u = interf_[k][i];
    if (u[l] == 0.0 && u[l + 1] == 0.0) continue;
    const Complex bt = beta_[k][i * L + l];
    const Complex p = derivative ? vertical_profile_dy(layer, bt, u[l], u[l + 1], y)
                                 : vertical_profile(layer, bt, u[l], u[l + 1], y);
    const double arg = n * kPi * (x - c.a) / w;
    sum += p * (tm ? std::sin(arg) : std::cos(arg));
  }
  return sum;
}

Complex FieldEvaluator::operator()(double x, double y, int k) const {
  return evaluate(x, y, k, false);
}

Complex FieldEvaluator::dy(double x, double y, int k) const { return evaluate(x, y, k, true); }

Complex FieldEvaluator::operator()(double x, double y) const {
  const int k = locate(x, y);
  if (k < 0) throw Error(ErrorKind::domain, "point outside every cavity");
  return evaluate(x, y, k, false);
}

Complex field_at(const ProblemSpec& spec, const ModalTables& tables,
                 const ApertureSolution& solution, double x, double y, int k) {
  return FieldEvaluator(spec, tables, solution)(x, y, k);
}

FieldMap field_grid(const FieldEvaluator& eval, int nx, int ny) {
  if (nx < 2 || ny < 2) throw Error(ErrorKind::domain, "field grid needs at least 2 x 2 points");
  FieldMap map;
  const auto& cavities = eval.spec().cavities;
  for (std::size_t k = 0; k < cavities.size(); ++k) {
    const Cavity& c = cavities[k];
    for (int j = 0; j < ny; ++j) {
      const double y = j + 1 == ny ? -c.depth : -c.depth * j / (ny - 1);
      for (int i = 0; i < nx; ++i) {
        const double x = i + 1 == nx ? c.b : c.a + (c.b - c.a) * i / (nx - 1);
        const int kk = static_cast<int>(k);
        map.samples.push_back({x, y, kk, eval.layer_of(kk, y), eval(x, y, kk)});
      }
    }
  }
  return map;
}

FieldMap diagonal_trace(const FieldEvaluator& eval, int k, int samples) {
  if (samples < 2) throw Error(ErrorKind::domain, "diagonal trace needs at least 2 samples");
  const Cavity& c = eval.spec().cavities.at(k);
  FieldMap map;
  for (int i = 0; i < samples; ++i) {
    const double s = double(i) / (samples - 1);
    const double x = i + 1 == samples ? c.b : c.a + s * (c.b - c.a);
    const double y = i + 1 == samples ? -c.depth : -s * c.depth;
    map.samples.push_back({x, y, k, eval.layer_of(k, y), eval(x, y, k)});
  }
  return map;
}

double rcs_tm(const ProblemSpec& spec, const ApertureSolution& solution, double phi) {
  if (spec.polarization != Polarization::tm)
    throw Error(ErrorKind::unsupported, "unsupported polarization: RCS is defined for TM only");
  const double k0 = spec.wave.kappa0;
  const double omega = k0 * std::cos(phi);
  Complex integral = 0.0;
  for (std::size_t k = 0; k < spec.cavities.size(); ++k) {
    const Cavity& c = spec.cavities[k];
    const double w = c.b - c.a;
    const Complex phase = std::exp(kI * omega * c.a);
    for (int n = 1; n <= spec.N; ++n) {
      const double mu = n * kPi / w;
      const Complex proj = (exp_integral(omega + mu, w) - exp_integral(omega - mu, w)) / (2.0 * kI);
      integral += solution.u0(static_cast<int>(k), n) * phase * proj;
    }
  }
  return k0 * std::norm(std::sin(phi) * integral);
}

std::vector<double> open_angles(int count, double lo, double hi) {
  if (count < 1) throw Error(ErrorKind::domain, "angle count must be positive");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * (i + 0.5) / count);
  return out;
}

RcsSweep backscatter_sweep(const ProblemSpec& spec, const std::vector<double>& phi,
                           SingularBlockCache& cache) {
  const ProblemSpec base = validate(spec);
  if (base.polarization != Polarization::tm)
    throw Error(ErrorKind::unsupported, "unsupported polarization: RCS is defined for TM only");
  const ModalTables tables = build_modal_tables(base);
  const FactoredSystem lu(build_system(base, tables, cache));
  RcsSweep out;
  for (double p : phi) {
    if (!(p > 0.0 && p < kPi)) throw Error(ErrorKind::domain, "observation angle outside (0, pi)");
    const ProblemSpec s = with_incidence(base, 0.5 * kPi - p);
    const ApertureSolution sol = lu.solve(incident_rhs(s));
    const double sigma = rcs_tm(s, sol, p);
    out.phi.push_back(p);
    out.sigma.push_back(sigma);
    out.sigma_db.push_back(10.0 * std::log10(sigma));
  }
  return out;
}

double enhancement(const ProblemSpec& spec, const ModalTables& tables,
                   const ApertureSolution& solution, int k, int points_per_layer) {
  const Cavity& c = spec.cavities.at(k);
  const double w = c.b - c.a;
  const GaussRule rule = gauss_rule(points_per_layer);
  const int first = first_mode(spec.polarization);
  double total = 0.0;
  for (int n = first; n <= spec.N; ++n) {
    const ModeTable& t = tables.at(k, n);
    const auto u = interior_coefficients(spec.polarization, c, t, solution.u0(k, n));
    const double weight = n == 0 ? w : 0.5 * w;
    for (std::size_t l = 0; l < c.layers.size(); ++l) {
      if (u[l] == 0.0 && u[l + 1] == 0.0) continue;
      const Layer& layer = c.layers[l];
      const Complex bt = t.coeffs.beta[l];
      const double d = layer.y_top - layer.y_bottom;
      // one rule per half wavelength of the profile
      const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(bt) * d / kPi)));
      const double integral = composite_integral_1d(
          [&](double y) { return std::norm(vertical_profile(layer, bt, u[l], u[l + 1], y)); },
          layer.y_bottom, layer.y_top, panels, rule);
      total += weight * integral;
    }
  }
  return std::sqrt(total / (w * c.depth));
}

EnhancementSpectrum enhancement_sweep(const ProblemSpec& spec, const std::vector<double>& kappa,
                                      SingularBlockCache& cache) {
  const ProblemSpec base = validate(spec);
  EnhancementSpectrum out;
  for (double kap : kappa) {
    const Solved s = solve(with_scaled_frequency(base, kap), cache);
    std::vector<double> q;
    for (std::size_t k = 0; k < s.spec.cavities.size(); ++k)
      q.push_back(enhancement(s.spec, s.tables, s.solution, static_cast<int>(k)));
    out.kappa.push_back(kap);
    out.q.push_back(std::move(q));
  }
  return out;
}

}  // namespace cavity
