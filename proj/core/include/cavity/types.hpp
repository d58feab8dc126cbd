#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "cavity/error.hpp"

namespace cavity {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Factor multiplying |s - t| once an aperture of width w is mapped onto
/// [0, 2*pi]; equals kappa0 * w / (2 pi).
class KernelScale {
 public:
  explicit KernelScale(double c) : c_(c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw Error(ErrorKind::domain, "kernel scale must be positive and finite");
    }
  }

  static KernelScale from_aperture(double kappa0, double width) {
    return KernelScale(kappa0 * width / (2.0 * kPi));
  }

  double value() const noexcept { return c_; }

  friend bool operator==(const KernelScale&, const KernelScale&) = default;

 private:
  double c_;
};

enum class Polarization { tm, te };

enum class TrigKind { sine, cosine };

}  // namespace cavity
