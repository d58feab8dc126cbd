#pragma once

#include <Eigen/Dense>

#include "cavity/model.hpp"

namespace cavity {

/// int_0^{w_k} int_0^{w_j} trig(m pi x / w_k) H0(kappa0 |x + a_k - y - a_j|)
/// trig(n pi y / w_j) dy dx for two disjoint cavities, rows m and columns n
/// in 0..N. The kernel is smooth; panels are halved geometrically toward
/// the facing corners while the gap is shorter than a panel.
struct CrossBlockTable {
  Eigen::MatrixXcd sine;    // empty unless requested
  Eigen::MatrixXcd cosine;  // empty unless requested
};

CrossBlockTable cross_block_table(const Cavity& row, const Cavity& col, double kappa0, int N,
                                  const QuadratureConfig& cfg, bool sine, bool cosine);

Complex cross_block(int m, int n, const Cavity& row, const Cavity& col, double kappa0,
                    TrigKind kind, const QuadratureConfig& cfg);

/// Gap between the intervals of two cavities (positive when disjoint).
double cavity_gap(const Cavity& a, const Cavity& b);

}  // namespace cavity
