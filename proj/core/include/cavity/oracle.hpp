#pragma once

// Slow reference evaluators. Nothing here shares quadrature code with the
// production path: nodes come from the Golub-Welsch eigenproblem and the
// meshes are graded geometrically toward every singular set.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavity/assembly.hpp"
#include "cavity/modal.hpp"

namespace cavity::oracle {

struct OracleReport {
  std::string case_id;
  Complex oracle_value;
  Complex production_value;
  double abs_error = 0.0;
  double rel_error = 0.0;
  std::string grid;  // parameters at convergence
  bool passed = true;
};

OracleReport make_report(std::string case_id, Complex oracle_value, Complex production_value,
                         double tolerance, std::string grid);

/// Gauss-Legendre nodes and weights on [-1, 1] from the Jacobi matrix.
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};
Rule golub_welsch(int q);

struct GradedOptions {
  double ratio = 0.15;
  int levels = 12;
  int points = 16;        // per panel
  double max_panel = 0.5;  // longest panel before refinement
  double tol = 1e-10;     // relative to max(|value|, scale)
  double scale = 1.0;
  int max_refinements = 6;
};

/// Weighted points covering [0, 2 pi]^2, graded toward s = t and the edges.
struct PointSet {
  std::vector<double> s;
  std::vector<double> t;
  std::vector<double> w;
  std::vector<double> r;  // |s - t|, kept exact below the spacing of s
};
PointSet graded_square(const GradedOptions& opt, int refinement);

/// int_0^{2 pi} int_0^{2 pi} f(s, t) ds dt for f with a logarithmic
/// singularity on s = t; refines until two successive levels agree.
/// Throws ErrorKind::non_convergence after max_refinements.
struct GradedResult {
  Complex value;
  double change = 0.0;
  int refinement = 0;
  std::size_t points = 0;
};
GradedResult graded_singular_integral(const std::function<Complex(double, double)>& f,
                                      const GradedOptions& opt = {});

/// int_a^b f(x) dx with an integrable singularity at a.
GradedResult graded_endpoint_integral(const std::function<Complex(double)>& f, double a,
                                      double b, const GradedOptions& opt = {});

/// All int int trig(n s/2) H0(c |s - t|) trig(m t/2) for m, n <= N on one
/// converged graded grid.
struct BlockTableResult {
  Eigen::MatrixXcd values;
  double change = 0.0;
  int refinement = 0;
  std::size_t points = 0;
};
BlockTableResult singular_block_table(int N, double c, TrigKind kind,
                                      const GradedOptions& opt = {});

/// Re-solves the tridiagonal system densely and reports the largest
/// deviation from the production solve. A singular system raises the same
/// ErrorKind::connection_resonance as the production path.
OracleReport dense_tridiag_check(const TridiagonalSystem& sys, const std::string& case_id = "",
                                 double tolerance = 1e-12);

/// Central-difference Helmholtz residual |Lap u + kappa^2 u| / max|u| at
/// interior sample points, for each step of the ladder.
struct FdReport {
  std::vector<double> steps;
  std::vector<double> residuals;
  double order = 0.0;
  OracleReport report;
};
FdReport fd_interior_check(const ProblemSpec& spec, const ModalTables& tables,
                           const ApertureSolution& solution, const std::vector<double>& steps,
                           int points_per_layer = 20, unsigned seed = 7);

/// Least-squares slope of log(err) against log(h).
double fitted_order(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace cavity::oracle
