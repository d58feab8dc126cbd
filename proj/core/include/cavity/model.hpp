#pragma once

#include <vector>

#include "cavity/types.hpp"

namespace cavity {

struct IncidentWave {
  double kappa0 = 1.0;
  double theta = 0.0;
  // derived by validate()
  double alpha = 0.0;
  double beta = 0.0;

  friend bool operator==(const IncidentWave&, const IncidentWave&) = default;
};

/// One homogeneous layer; y_bottom < y_top <= 0.
struct Layer {
  double y_top = 0.0;
  double y_bottom = -1.0;
  Complex kappa{1.0, 0.0};

  /// Negative thickness y_bottom - y_top, kept in the sign convention of the
  /// modal formulas.
  double h() const noexcept { return y_bottom - y_top; }

  friend bool operator==(const Layer&, const Layer&) = default;
};

struct Cavity {
  double a = 0.0;
  double b = 1.0;
  std::vector<Layer> layers;  // top to bottom
  // derived by validate()
  double width = 0.0;
  double depth = 0.0;

  friend bool operator==(const Cavity&, const Cavity&) = default;
};

/// Composite Gauss-Legendre settings for the aperture integrals. The
/// recursion seeds at lift_threshold should stay above 2*points_per_panel
/// so the directly integrated kernel is smooth enough for the rule.
struct QuadratureConfig {
  int panels = 32;
  int points_per_panel = 4;
  int bessel_K = 8;
  int lift_threshold = 11;

  friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

struct ProblemSpec {
  IncidentWave wave;
  Polarization polarization = Polarization::tm;
  std::vector<Cavity> cavities;
  int N = 10;
  QuadratureConfig quad;

  friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Minimum gap between neighbouring cavities relative to the widest one.
inline constexpr double kMinGapRatio = 1e-9;

/// Checks every invariant and fills the derived fields (alpha, beta, width,
/// depth, layer y_top). Idempotent. Throws ErrorKind::validation naming the
/// offending field.
ProblemSpec validate(ProblemSpec spec);

/// (omega^2 eps mu + i omega mu sigma)^{1/2} on the branch Im >= 0.
Complex wavenumber_from_material(double omega, Complex eps, double mu, double sigma);

/// Scales the incident and every layer wavenumber by kappa0_new / kappa0.
ProblemSpec with_scaled_frequency(const ProblemSpec& spec, double kappa0_new);

/// Replaces the incident angle and re-derives alpha and beta.
ProblemSpec with_incidence(const ProblemSpec& spec, double theta);

/// Number of aperture modes per cavity: N for TM, N + 1 for TE.
inline int modes_per_cavity(const ProblemSpec& spec) {
  return spec.polarization == Polarization::tm ? spec.N : spec.N + 1;
}

/// First mode index: 1 for TM, 0 for TE.
inline int first_mode(Polarization p) { return p == Polarization::tm ? 1 : 0; }

}  // namespace cavity
