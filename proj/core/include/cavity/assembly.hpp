#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cavity/modal.hpp"
#include "cavity/singular_block.hpp"

namespace cavity {

/// Row of (cavity k, mode n): k * modes + (n - first_mode).
struct Layout {
  int cavities = 0;
  int modes = 0;
  int first_mode = 1;

  int size() const noexcept { return cavities * modes; }
  int row(int k, int n) const noexcept { return k * modes + (n - first_mode); }
};

Layout make_layout(const ProblemSpec& spec);

/// int_0^w e^{i omega x} dx, with its Taylor series for small |omega w|.
Complex exp_integral(double omega, double w);

/// -2 i beta int_0^{w_k} e^{i alpha (x + a_k)} sin(m pi x / w_k) dx
Complex incident_vector_tm(const ProblemSpec& spec, std::size_t k, int m);
/// 2 int_0^{w_k} e^{i alpha (x + a_k)} cos(m pi x / w_k) dx
Complex incident_vector_te(const ProblemSpec& spec, std::size_t k, int m);

Eigen::VectorXcd incident_rhs(const ProblemSpec& spec);

struct ApertureSystem {
  Eigen::MatrixXcd lhs;
  Eigen::VectorXcd rhs;
  Layout layout;
};

/// lhs = D - M and rhs = F (TM) or G (TE).
ApertureSystem build_system(const ProblemSpec& spec, const ModalTables& tables,
                            SingularBlockCache& cache);

struct ApertureSolution {
  Layout layout;
  Eigen::VectorXcd coefficients;  // stacked U
  double rcond = 0.0;
  std::vector<std::string> warnings;

  Complex u0(int k, int n) const { return coefficients(layout.row(k, n)); }
};

inline constexpr double kMinRcond = 1e-14;

/// LU with partial pivoting, reused across right-hand sides.
class FactoredSystem {
 public:
  /// Throws ErrorKind::system_singular on an exactly zero pivot.
  explicit FactoredSystem(const ApertureSystem& sys);

  ApertureSolution solve(const Eigen::VectorXcd& rhs) const;
  double rcond() const noexcept { return rcond_; }
  const Layout& layout() const noexcept { return layout_; }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  Layout layout_;
  double rcond_ = 0.0;
};

ApertureSolution solve_system(const ApertureSystem& sys);

/// Everything needed downstream of one solve.
struct Solved {
  ProblemSpec spec;
  ModalTables tables;
  ApertureSolution solution;
};

/// validate, modal tables, assembly and solve in one call.
Solved solve(const ProblemSpec& spec, SingularBlockCache& cache);
Solved solve(const ProblemSpec& spec);

}  // namespace cavity
