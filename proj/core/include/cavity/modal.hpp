#pragma once

#include <vector>

#include "cavity/model.hpp"

namespace cavity {

/// Principal (kappa^2 - (n pi / w)^2)^{1/2} with Im >= 0. Exactly zero for
/// real kappa within 1e-14 relative of n pi / w.
Complex beta(Complex kappa, double w, int n);

struct LayerCoeffs {
  Complex a;
  Complex b;
};

/// Diagonal and off-diagonal entries a = beta / sin(beta d),
/// b = -beta cot(beta d) with d = -h > 0. Evaluated in a scaled form with
/// |e^{i beta d}| <= 1 and by its Taylor series for small |beta d|, so
/// beta = 0 yields a = -1/h, b = 1/h. Throws ErrorKind::modal_resonance
/// when sin(beta d) vanishes; mode and layer are for the message only.
LayerCoeffs layer_coeffs(Complex beta, double h, int mode = -1, int layer = -1);

struct ModeCoefficients {
  int n = 0;
  std::vector<Complex> beta;
  std::vector<Complex> a;
  std::vector<Complex> b;
};

ModeCoefficients mode_coefficients(const Cavity& cavity, int n);

/// Symmetric tridiagonal system: diag (size m), off (size m - 1), rhs.
struct TridiagonalSystem {
  std::vector<Complex> diag;
  std::vector<Complex> off;
  std::vector<Complex> rhs;
};

/// Thomas elimination; throws ErrorKind::connection_resonance on a pivot
/// that vanishes relative to the matrix entries.
std::vector<Complex> solve_tridiagonal(const TridiagonalSystem& sys, int mode = -1);

TridiagonalSystem connection_system_tm(const ModeCoefficients& mc);
TridiagonalSystem connection_system_te(const Cavity& cavity, const ModeCoefficients& mc);

struct ConnectionSolution {
  std::vector<Complex> u_hat;  // TM: L - 1 entries, TE: L entries
  Complex impedance;           // s-hat (TM) or t-hat (TE)
};

ConnectionSolution connection_tm(const Cavity& cavity, int n);
ConnectionSolution connection_tm(const ModeCoefficients& mc);
ConnectionSolution connection_te(const Cavity& cavity, double kappa0, int n);
ConnectionSolution connection_te(const Cavity& cavity, double kappa0,
                                 const ModeCoefficients& mc);

struct ModeTable {
  ModeCoefficients coeffs;
  ConnectionSolution connection;
};

/// Per cavity, per mode. Modes run 1..N (TM) or 0..N (TE).
struct ModalTables {
  Polarization polarization = Polarization::tm;
  int first_mode = 1;
  std::vector<std::vector<ModeTable>> cavities;

  const ModeTable& at(std::size_t cavity, int n) const {
    return cavities.at(cavity).at(static_cast<std::size_t>(n - first_mode));
  }
};

ModalTables build_modal_tables(const ProblemSpec& spec);

/// Interface values u_0..u_L of mode n for aperture coefficient u0.
std::vector<Complex> interior_coefficients(Polarization pol, const Cavity& cavity,
                                           const ModeTable& table, Complex u0);

/// Value of the layer solution with end values u_top at y_top and
/// u_bottom at y_bottom, at y in [y_bottom, y_top].
Complex vertical_profile(const Layer& layer, Complex beta, Complex u_top, Complex u_bottom,
                         double y);

/// d/dy of vertical_profile.
Complex vertical_profile_dy(const Layer& layer, Complex beta, Complex u_top, Complex u_bottom,
                            double y);

}  // namespace cavity
