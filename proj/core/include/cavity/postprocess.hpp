#pragma once

#include <vector>

#include "cavity/assembly.hpp"

namespace cavity {

struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  int cavity = 0;
  int layer = 0;  // 1-based, top to bottom
  Complex value;
};

struct FieldMap {
  std::vector<FieldSample> samples;
};

/// Interface coefficients of every mode, ready for point evaluation.
class FieldEvaluator {
 public:
  FieldEvaluator(const ProblemSpec& spec, const ModalTables& tables,
                 const ApertureSolution& solution);

  /// Field in cavity k at (x, y); throws ErrorKind::domain outside it.
  Complex operator()(double x, double y, int k) const;
  /// d/dy of the field, from the closed-form layer profiles.
  Complex dy(double x, double y, int k) const;
  /// Field at (x, y) in whichever cavity contains it.
  Complex operator()(double x, double y) const;

  /// Cavity containing (x, y), or -1.
  int locate(double x, double y) const;
  /// 1-based layer of cavity k containing y (the upper one on an interface).
  int layer_of(int k, double y) const;

  const ProblemSpec& spec() const noexcept { return spec_; }

 private:
  Complex evaluate(double x, double y, int k, bool derivative) const;

  ProblemSpec spec_;
  std::vector<std::vector<Complex>> beta_;                 // [k][mode * L + l]
  std::vector<std::vector<std::vector<Complex>>> interf_;  // [k][mode][0..L]
};

Complex field_at(const ProblemSpec& spec, const ModalTables& tables,
                 const ApertureSolution& solution, double x, double y, int k);

/// nx x ny samples per cavity over [a_k, b_k] x [-h_k, 0], row-major in y
/// from the aperture down.
FieldMap field_grid(const FieldEvaluator& eval, int nx, int ny);

/// Samples from (a_k, 0) to (b_k, -h_k).
FieldMap diagonal_trace(const FieldEvaluator& eval, int k, int samples = 200);

/// kappa0 |sin(phi) int_Gamma u e^{i kappa0 cos(phi) x} dx|^2 over all apertures.
double rcs_tm(const ProblemSpec& spec, const ApertureSolution& solution, double phi);

struct RcsSweep {
  std::vector<double> phi;
  std::vector<double> sigma;
  std::vector<double> sigma_db;
};

/// Monostatic sweep: incidence theta = pi/2 - phi for each observation phi.
/// The matrix does not depend on the incidence and is factored once.
RcsSweep backscatter_sweep(const ProblemSpec& spec, const std::vector<double>& phi,
                           SingularBlockCache& cache);

/// count angles spread uniformly over the open interval (lo, hi).
std::vector<double> open_angles(int count, double lo, double hi);

/// ||u||_{L2(D_k)} / ||u^i||_{L2(D_k)} with ||u^i||^2 = w h.
double enhancement(const ProblemSpec& spec, const ModalTables& tables,
                   const ApertureSolution& solution, int k, int points_per_layer = 16);

struct EnhancementSpectrum {
  std::vector<double> kappa;
  std::vector<std::vector<double>> q;  // [sample][cavity]
};

/// Q_E over a sweep of kappa0, every layer wavenumber scaled along.
EnhancementSpectrum enhancement_sweep(const ProblemSpec& spec, const std::vector<double>& kappa,
                                      SingularBlockCache& cache);

}  // namespace cavity
