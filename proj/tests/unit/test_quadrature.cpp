#include <gtest/gtest.h>

#include <random>

#include "cavity/cross_block.hpp"
#include "cavity/gauss.hpp"
#include "cavity/moments.hpp"
#include "cavity/oracle.hpp"
#include "cavity/singular_block.hpp"
#include "cavity/special_functions.hpp"

using namespace cavity;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

double trig(TrigKind k, double x) { return k == TrigKind::sine ? std::sin(x) : std::cos(x); }

Cavity cavity_at(double a, double b) {
  ProblemSpec s;
  Cavity c;
  c.a = a;
  c.b = b;
  c.layers = {Layer{0.0, -1.0, 1.0}};
  s.cavities = {c};
  return validate(s).cavities.front();
}

}  // namespace

TEST(Gauss, WeightsAndExactness) {
  for (int q = 2; q <= 20; ++q) {
    const GaussRule r = gauss_rule(q);
    double sum = 0.0;
    for (double w : r.weights) {
      EXPECT_GT(w, 0.0);
      sum += w;
    }
    EXPECT_NEAR(sum, 2.0, 1e-14) << q;
    for (int p = 0; p <= 2 * q - 1; ++p) {
      double v = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) v += r.weights[i] * std::pow(r.nodes[i], p);
      EXPECT_NEAR(v, p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14) << q << " " << p;
    }
  }
  EXPECT_THROW(gauss_rule(1), Error);
}

TEST(Gauss, MatchesGolubWelsch) {
  for (int q : {2, 4, 8, 16}) {
    const GaussRule a = gauss_rule(q);
    const oracle::Rule b = oracle::golub_welsch(q);
    for (int i = 0; i < q; ++i) {
      EXPECT_NEAR(a.nodes[i], b.x[i], 1e-14);
      EXPECT_NEAR(a.weights[i], b.w[i], 1e-14);
    }
  }
}

TEST(Gauss, CompositeExamples) {
  const GaussRule r2 = gauss_rule(2), r4 = gauss_rule(4);
  EXPECT_NEAR(composite_integral_1d([](double x) { return x * x; }, -1.0, 1.0, 1, r2), 2.0 / 3,
              1e-15);
  EXPECT_NEAR(composite_integral_1d([](double s) { return std::sin(s); }, 0.0, 2 * kPi, 4, r4),
              0.0, 1e-12);
  EXPECT_NEAR(composite_integral_1d([](double s) { return std::exp(s); }, 0.0, 2 * kPi, 8, r4),
              std::exp(2 * kPi) - 1.0, 1e-10 * std::exp(2 * kPi));
  const double v = composite_integral_2d(
      [](double s, double t) { return std::sin(s / 2) * std::sin(t); }, 8, r4);
  EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(PolyTrig, Examples) {
  EXPECT_NEAR(poly_trig_integral(0, 2, TrigKind::sine), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(poly_trig_integral(0, 0, TrigKind::cosine), 2 * kPi);
  EXPECT_NEAR(poly_trig_integral(1, 1, TrigKind::sine), 4 * kPi, 1e-13);
  EXPECT_NEAR(poly_trig_integral(2, 1, TrigKind::sine), 46.956835208714868951, 1e-12);
  for (int p = 0; p <= 6; ++p)
    EXPECT_NEAR(poly_trig_integral(p, 0, TrigKind::cosine), std::pow(2 * kPi, p + 1) / (p + 1),
                1e-12 * std::pow(2 * kPi, p + 1));
}

TEST(PolyTrig, MatchesGauss) {
  const GaussRule r = gauss_rule(8);
  for (TrigKind k : {TrigKind::sine, TrigKind::cosine})
    for (int p = 0; p <= 12; ++p)
      for (int n = 0; n <= 12; ++n) {
        const double g = composite_integral_1d(
            [&](double s) { return std::pow(s, p) * trig(k, n * s / 2); }, 0.0, 2 * kPi, 64, r);
        EXPECT_NEAR(poly_trig_integral(p, n, k), g, 1e-11 * std::pow(2 * kPi, p + 1));
      }
}

TEST(DoublePolyTrig, Examples) {
  EXPECT_NEAR(double_poly_trig(0, 1, 1, TrigKind::sine, TrigKind::sine), 16.0, 1e-13);
  EXPECT_NEAR(double_poly_trig(0, 2, 2, TrigKind::sine, TrigKind::sine), 0.0, 1e-13);
  EXPECT_NEAR(double_poly_trig(0, 1, 2, TrigKind::sine, TrigKind::sine), 0.0, 1e-14);
  EXPECT_NEAR(double_poly_trig(1, 1, 1, TrigKind::sine, TrigKind::sine), 0.0, 1e-12);
  EXPECT_NEAR(double_poly_trig(2, 1, 1, TrigKind::sine, TrigKind::sine), 59.827340834859475803,
              1e-11);
  EXPECT_THROW(
      {
        try {
          double_poly_trig(kMaxPolyOrder + 1, 1, 1, TrigKind::sine, TrigKind::sine);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::order_too_high);
          throw;
        }
      },
      Error);
}

TEST(DoublePolyTrig, MatchesTensorGauss) {
  const GaussRule r = gauss_rule(8);
  for (TrigKind ks : {TrigKind::sine, TrigKind::cosine})
    for (TrigKind kt : {TrigKind::sine, TrigKind::cosine})
      for (int k : {0, 1, 3, 6})
        for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 5}, std::pair{4, 4}, std::pair{0, 3}}) {
          const double g = composite_integral_2d(
              [&](double s, double t) {
                return std::pow(t - s, k) * trig(ks, n * s / 2) * trig(kt, m * t / 2);
              },
              32, r);
          EXPECT_NEAR(double_poly_trig(k, m, n, ks, kt), g, 1e-10 * std::pow(2 * kPi, k + 2));
        }
}

TEST(LogPowerMoment, Examples) {
  EXPECT_NEAR(log_power_moment(0, 0, TrigKind::cosine), 2 * kPi * (std::log(2 * kPi) - 1.0),
              1e-13);
  for (int k = 0; k <= 12; ++k) EXPECT_EQ(log_power_moment(k, 0, TrigKind::sine), 0.0);
  EXPECT_LE(rel(log_power_moment(1, 1, TrigKind::sine), 64.673332760532070173), 1e-12);
}

TEST(LogPowerMoment, MatchesGradedOracle) {
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine})
    for (int k : {0, 1, 2, 5})
      for (int n : {1, 2, 7, 15}) {
        const int p = kind == TrigKind::sine ? k + 1 : k;
        const auto o = oracle::graded_endpoint_integral(
            [&](double s) { return Complex(std::pow(s, p) * std::log(s) * trig(kind, n * s / 2)); },
            0.0, 2 * kPi);
        const double v = log_power_moment(k, n, kind);
        EXPECT_LE(std::abs(v - o.value.real()), 1e-10 * std::max(1.0, std::abs(v))) << k << " " << n;
      }
}

TEST(LogPowerMoment, RecursionStepMatchesDirect) {
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine})
    for (int k : {11, 12, 13})
      for (int n : {1, 3, 6}) {
        const long double up = log_power_moment_direct(k + 2, n, kind);
        const long double step = log_power_moment_step(k, n, kind, up);
        const long double direct = log_power_moment_direct(k, n, kind);
        EXPECT_LE(std::abs(double(step - direct)), 1e-9 * std::abs(double(direct)));
      }
}

TEST(LogDoubleMoment, Examples) {
  const QuadratureConfig cfg;
  EXPECT_LE(rel(log_double_moment_sin(1, 1, 1, cfg), 0.94768460323804831911), 1e-12);
  EXPECT_LE(rel(log_double_moment_cos(1, 0, 0, cfg), 4 * kPi * kPi * (std::log(2 * kPi) - 1.5)),
            1e-13);
  EXPECT_EQ(log_double_moment_sin(1, 1, 2, cfg), 0.0);
  EXPECT_EQ(log_double_moment_cos(3, 2, 5, cfg), 0.0);
}

TEST(LogDoubleMoment, MatchesGradedOracle) {
  const QuadratureConfig cfg;
  oracle::GradedOptions opt;
  opt.tol = 1e-12;
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine})
    for (int k : {1, 3, 7})
      for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 4}, std::pair{3, 7}, std::pair{8, 8}}) {
        const auto o = oracle::graded_singular_integral(
            [&](double s, double t) {
              const double r = std::abs(t - s);
              return Complex(r == 0.0 ? 0.0
                                      : std::pow(t - s, k - 1) * std::log(r) *
                                            trig(kind, m * t / 2) * trig(kind, n * s / 2));
            },
            opt);
        const double v = log_double_moment(k, m, n, kind, cfg);
        EXPECT_LE(std::abs(v - o.value.real()), 1e-9 * std::max(1.0, std::abs(v)))
            << k << " " << m << " " << n;
      }
}

TEST(LogDoubleMoment, RecursionStepMatchesDirect) {
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine})
    for (int k : {11, 13})
      for (auto [m, n] : {std::pair{1, 1}, std::pair{2, 4}, std::pair{3, 5}}) {
        const long double up = log_double_moment_direct(k + 2, m, n, kind);
        const long double lm = log_power_moment_ld(k, n, kind);
        const long double step = log_double_moment_step(k, m, n, kind, up, lm);
        const long double direct = log_double_moment_direct(k, m, n, kind);
        EXPECT_LE(std::abs(double(step - direct)), 1e-9 * std::abs(double(direct)))
            << k << " " << m << " " << n;
      }
}

TEST(SingularBlock, OddSumIsExactlyZero) {
  for (double c : {0.3, 1.0, 5.0})
    for (TrigKind kind : {TrigKind::sine, TrigKind::cosine}) {
      EXPECT_EQ(singular_block(1, 2, KernelScale(c), kind, {}), Complex(0.0));
      const SingularBlockTable t = singular_block_table(12, KernelScale(c), kind, {});
      for (int m = 0; m <= 12; ++m)
        for (int n = 0; n <= 12; ++n)
          if ((m + n) % 2) EXPECT_EQ(t(m, n), Complex(0.0));
    }
}

TEST(SingularBlock, ReferenceValues) {
  const QuadratureConfig cfg;
  EXPECT_LE(rel(singular_block(1, 1, KernelScale(0.25), TrigKind::sine, cfg),
                Complex(15.099801169932779843, -13.835607587646090780)),
            1e-8);
  EXPECT_LE(rel(singular_block(0, 2, KernelScale(1.0), TrigKind::cosine, cfg),
                Complex(-2.6688775849549372941, -1.7310561946332309870)),
            1e-8);
}

TEST(SingularBlock, CosineSymmetric) {
  const SingularBlockTable t = singular_block_table(10, KernelScale(0.8), TrigKind::cosine, {});
  for (int m = 0; m <= 10; ++m)
    for (int n = m; n <= 10; n += 2) EXPECT_LE(std::abs(t(m, n) - t(n, m)), 1e-13 * std::abs(t(m, n)));
}

TEST(SingularBlock, EighthOrderUnderPanelHalving) {
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine})
    for (double c : {0.25, 1.0}) {
      const auto ref = singular_block_table(8, KernelScale(c), kind, {256, 4, 8, 11}).values;
      std::vector<double> h, err;
      for (int P : {4, 8, 16}) {
        const auto v = singular_block_table(8, KernelScale(c), kind, {P, 4, 8, 11}).values;
        h.push_back(1.0 / P);
        err.push_back((v - ref).norm() / ref.norm());
      }
      EXPECT_GE(oracle::fitted_order(h, err), 7.5) << c;
    }
}

TEST(SingularBlock, LargeScaleMatchesOracle) {
  const auto o = oracle::singular_block_table(4, 4.0, TrigKind::cosine);
  const SingularBlockTable t = singular_block_table(4, KernelScale(4.0), TrigKind::cosine, {64, 4, 8, 11});
  EXPECT_FALSE(t.split);
  for (int m = 0; m <= 4; ++m)
    for (int n = m % 2; n <= 4; n += 2) EXPECT_LE(rel(t(m, n), Complex(o.values(m, n))), 1e-8);
}

TEST(SingularBlock, CacheReusesLargerTables) {
  SingularBlockCache cache;
  const QuadratureConfig cfg;
  const auto& big = cache.get(12, KernelScale(0.5), TrigKind::sine, cfg);
  const auto& small = cache.get(6, KernelScale(0.5), TrigKind::sine, cfg);
  EXPECT_EQ(&big, &small);
  EXPECT_EQ(cache.size(), 1u);
  cache.get(6, KernelScale(0.5), TrigKind::cosine, cfg);
  EXPECT_EQ(cache.size(), 2u);
}

TEST(CrossBlock, DecaysWithKernel) {
  const Cavity a = cavity_at(0.0, 0.1);
  const double kappa0 = 2.0;
  for (double gap : {20.0, 40.0, 80.0}) {
    const Cavity b = cavity_at(0.1 + gap, 0.2 + gap);
    const Complex v = cross_block(0, 0, a, b, kappa0, TrigKind::cosine, {});
    const double far = 0.01 * std::abs(special::hankel1_0(kappa0 * (gap + 0.2)));
    const double near = 0.01 * std::abs(special::hankel1_0(kappa0 * gap));
    EXPECT_LE(std::abs(v), 1.01 * near) << gap;
    EXPECT_GE(std::abs(v), 0.9 * far) << gap;
  }
}

TEST(CrossBlock, StableUnderPanelDoublingAtSmallGap) {
  const Cavity a = cavity_at(0.0, 1.0), b = cavity_at(1.1, 2.0);
  for (TrigKind kind : {TrigKind::sine, TrigKind::cosine}) {
    const auto coarse = cross_block_table(a, b, 3.0, 6, {32, 4, 8, 11}, true, true);
    const auto fine = cross_block_table(a, b, 3.0, 6, {64, 4, 8, 11}, true, true);
    const auto& c = kind == TrigKind::sine ? coarse.sine : coarse.cosine;
    const auto& f = kind == TrigKind::sine ? fine.sine : fine.cosine;
    EXPECT_LE((c - f).norm() / f.norm(), 1e-9);
  }
}

TEST(CrossBlock, SwapSymmetryForEqualWidths) {
  const Cavity a = cavity_at(0.0, 0.5), b = cavity_at(0.8, 1.3);
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      const Complex ab = cross_block(m, n, a, b, 4.0, TrigKind::sine, {});
      const Complex ba = cross_block(n, m, b, a, 4.0, TrigKind::sine, {});
      EXPECT_LE(std::abs(ab - ba), 1e-13 * std::max(1.0, std::abs(ab)));
    }
  EXPECT_NEAR(cavity_gap(a, b), 0.3, 1e-15);
}
