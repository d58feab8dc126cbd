#include "cavity/assembly.hpp"

#include <cmath>
#include <sstream>

#include "cavity/cross_block.hpp"

namespace cavity {
namespace {

constexpr double kSeriesLimit = 0.5;

// int_0^w e^{i alpha x} trig(mu x) dx from exp_integral
Complex sine_projection(double alpha, double mu, double w) {
  return (exp_integral(alpha + mu, w) - exp_integral(alpha - mu, w)) / (2.0 * kI);
}

Complex cosine_projection(double alpha, double mu, double w) {
  return 0.5 * (exp_integral(alpha + mu, w) + exp_integral(alpha - mu, w));
}

void check_finite(const Eigen::MatrixXcd& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorKind::system_singular, std::string(what) + " has non-finite entries");
}

}  // namespace

Layout make_layout(const ProblemSpec& spec) {
  Layout l;
  l.cavities = static_cast<int>(spec.cavities.size());
  l.modes = modes_per_cavity(spec);
  l.first_mode = first_mode(spec.polarization);
  return l;
}

Complex exp_integral(double omega, double w) {
  const Complex z = kI * omega * w;
  if (std::abs(z) < kSeriesLimit) {
    // w sum_j z^j / (j + 1)!
    Complex term = 1.0, sum = 1.0;
    for (int j = 1; j < 40; ++j) {
      term *= z / double(j + 1);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return w * sum;
  }
  return (std::exp(z) - 1.0) / (kI * omega);
}

Complex incident_vector_tm(const ProblemSpec& spec, std::size_t k, int m) {
  const Cavity& c = spec.cavities.at(k);
  const double w = c.b - c.a;
  const IncidentWave& wave = spec.wave;
  return -2.0 * kI * wave.beta * std::exp(kI * wave.alpha * c.a) *
         sine_projection(wave.alpha, m * kPi / w, w);
}

Complex incident_vector_te(const ProblemSpec& spec, std::size_t k, int m) {
  const Cavity& c = spec.cavities.at(k);
  const double w = c.b - c.a;
  return 2.0 * std::exp(kI * spec.wave.alpha * c.a) *
         cosine_projection(spec.wave.alpha, m * kPi / w, w);
}

Eigen::VectorXcd incident_rhs(const ProblemSpec& spec) {
  const Layout layout = make_layout(spec);
  Eigen::VectorXcd rhs(layout.size());
  for (int k = 0; k < layout.cavities; ++k)
    for (int n = layout.first_mode; n <= spec.N; ++n)
      rhs(layout.row(k, n)) = spec.polarization == Polarization::tm
                                  ? incident_vector_tm(spec, k, n)
                                  : incident_vector_te(spec, k, n);
  return rhs;
}

ApertureSystem build_system(const ProblemSpec& spec, const ModalTables& tables,
                            SingularBlockCache& cache) {
  ApertureSystem sys;
  sys.layout = make_layout(spec);
  const Layout& L = sys.layout;
  const int N = spec.N;
  const double k0 = spec.wave.kappa0;
  const bool tm = spec.polarization == Polarization::tm;
  sys.lhs = Eigen::MatrixXcd::Zero(L.size(), L.size());

  for (int k = 0; k < L.cavities; ++k) {
    const Cavity& ck = spec.cavities[k];
    const double wk = ck.b - ck.a;
    for (int j = 0; j < L.cavities; ++j) {
      const Cavity& cj = spec.cavities[j];
      const double wj = cj.b - cj.a;
      Eigen::MatrixXcd sine, cosine;
      if (k == j) {
        const KernelScale c = KernelScale::from_aperture(k0, wk);
        const double jac = (wk / (2.0 * kPi)) * (wk / (2.0 * kPi));
        if (tm) sine = jac * cache.get(N, c, TrigKind::sine, spec.quad).values;
        cosine = jac * cache.get(N, c, TrigKind::cosine, spec.quad).values;
      } else {
        CrossBlockTable t = cross_block_table(ck, cj, k0, N, spec.quad, tm, true);
        sine = std::move(t.sine);
        cosine = std::move(t.cosine);
      }
      for (int m = L.first_mode; m <= N; ++m)
        for (int n = L.first_mode; n <= N; ++n) {
          Complex M;
          if (tm) {
            M = 0.5 * kI * k0 * k0 * sine(m, n) -
                kI * (double(m) * n * kPi * kPi / (2.0 * wj * wk)) * cosine(m, n);
          } else {
            M = -0.5 * kI * tables.at(static_cast<std::size_t>(j), n).connection.impedance * cosine(m, n);
          }
          sys.lhs(L.row(k, m), L.row(j, n)) = -M;
        }
    }
    for (int m = L.first_mode; m <= N; ++m) {
      const Complex D = tm ? 0.5 * wk * tables.at(static_cast<std::size_t>(k), m).connection.impedance
                           : Complex(m == 0 ? wk : 0.5 * wk);
      sys.lhs(L.row(k, m), L.row(k, m)) += D;
    }
  }
  sys.rhs = incident_rhs(spec);
  check_finite(sys.lhs, "system matrix");
  return sys;
}

FactoredSystem::FactoredSystem(const ApertureSystem& sys) : layout_(sys.layout) {
  check_finite(sys.lhs, "system matrix");
  lu_.compute(sys.lhs);
  const auto& lu = lu_.matrixLU();
  for (Eigen::Index i = 0; i < lu.rows(); ++i)
    if (lu(i, i) == Complex(0.0))
      throw Error(ErrorKind::system_singular, "zero pivot at row " + std::to_string(i));
  rcond_ = lu.rows() > 0 ? lu_.rcond() : 1.0;
}

ApertureSolution FactoredSystem::solve(const Eigen::VectorXcd& rhs) const {
  if (rhs.size() != layout_.size())
    throw Error(ErrorKind::domain, "right-hand side has the wrong length");
  ApertureSolution s;
  s.layout = layout_;
  s.coefficients = lu_.solve(rhs);
  s.rcond = rcond_;
  if (rcond_ < kMinRcond) {
    std::ostringstream msg;
    msg << "ill-conditioned aperture system (rcond " << rcond_ << ")";
    s.warnings.push_back(msg.str());
  }
  return s;
}

ApertureSolution solve_system(const ApertureSystem& sys) {
  return FactoredSystem(sys).solve(sys.rhs);
}

Solved solve(const ProblemSpec& spec, SingularBlockCache& cache) {
  Solved out;
  out.spec = validate(spec);
  out.tables = build_modal_tables(out.spec);
  out.solution = solve_system(build_system(out.spec, out.tables, cache));
  return out;
}

Solved solve(const ProblemSpec& spec) {
  SingularBlockCache cache;
  return solve(spec, cache);
}

}  // namespace cavity
