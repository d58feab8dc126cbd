#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <functional>

#include "cavity/config_io.hpp"
#include "cavity/model.hpp"

using namespace cavity;

namespace {

ProblemSpec example1() {
  ProblemSpec s;
  s.wave.kappa0 = 1.5;
  s.wave.theta = kPi / 9;
  s.N = 30;
  Cavity c;
  c.a = -0.5;
  c.b = 0.5;
  c.layers = {Layer{0.0, -1.5, 1.5}};
  s.cavities = {c};
  return s;
}

ProblemSpec example4() {
  ProblemSpec s;
  s.wave.kappa0 = kPi;
  s.wave.theta = kPi / 6;
  s.N = 40;
  Cavity c1{-0.6, -0.1, {Layer{0.0, -0.1, kPi}}};
  Cavity c2{0.0, 0.2, {Layer{0.0, -1.0 / 6, kPi}, Layer{0.0, -1.0 / 3, 2 * kPi},
                       Layer{0.0, -0.5, 10 * kPi}}};
  Cavity c3{0.3, 0.6, {Layer{0.0, -0.15, Complex(1.0, 0.5)}, Layer{0.0, -0.3, 0.5}}};
  s.cavities = {c1, c2, c3};
  return s;
}

std::string error_message(const std::function<void()>& f, ErrorKind kind) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error raised";
  return {};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("cavity_model_" + name);
}

}  // namespace

TEST(Validate, Example1IsValidAndDerivesFields) {
  const ProblemSpec s = validate(example1());
  EXPECT_DOUBLE_EQ(s.wave.alpha, 1.5 * std::sin(kPi / 9));
  EXPECT_DOUBLE_EQ(s.wave.beta, 1.5 * std::cos(kPi / 9));
  EXPECT_NEAR(s.wave.alpha * s.wave.alpha + s.wave.beta * s.wave.beta, 2.25, 1e-15);
  EXPECT_DOUBLE_EQ(s.cavities[0].width, 1.0);
  EXPECT_DOUBLE_EQ(s.cavities[0].depth, 1.5);
}

TEST(Validate, Example4IsValid) {
  const ProblemSpec s = validate(example4());
  ASSERT_EQ(s.cavities.size(), 3u);
  EXPECT_DOUBLE_EQ(s.cavities[1].layers[1].y_top, -1.0 / 6);
  EXPECT_DOUBLE_EQ(s.cavities[1].layers[2].y_top, -1.0 / 3);
  EXPECT_DOUBLE_EQ(s.cavities[2].depth, 0.3);
}

TEST(Validate, RejectsOverlapAndTouching) {
  ProblemSpec s = example1();
  s.cavities = {Cavity{0.0, 1.0, {Layer{0.0, -1.0, 1.0}}},
                Cavity{0.5, 1.5, {Layer{0.0, -1.0, 1.0}}}};
  const std::string msg = error_message([&] { validate(s); }, ErrorKind::validation);
  EXPECT_NE(msg.find("overlaps"), std::string::npos) << msg;
  s.cavities[1].a = 1.0;
  s.cavities[1].b = 2.0;
  EXPECT_NE(error_message([&] { validate(s); }, ErrorKind::validation).find("touches"),
            std::string::npos);
}

TEST(Validate, RejectsEachInvariant) {
  auto expect_field = [](ProblemSpec s, const std::string& field) {
    const std::string msg = error_message([&] { validate(s); }, ErrorKind::validation);
    EXPECT_NE(msg.find(field), std::string::npos) << msg;
  };
  ProblemSpec s = example1();
  s.wave.kappa0 = 0.0;
  expect_field(s, "kappa0");
  s = example1();
  s.N = 0;
  expect_field(s, "N");
  s = example1();
  s.wave.theta = kPi / 2;
  expect_field(s, "theta");
  s = example1();
  s.cavities[0].layers.push_back(Layer{0.0, -1.0, 1.0});
  expect_field(s, "cavities[0].layers[1].y_bottom");
  s = example1();
  s.cavities[0].layers[0].kappa = Complex(1.0, -0.1);
  expect_field(s, "cavities[0].layers[0].kappa");
  s = example1();
  s.cavities[0].b = s.cavities[0].a;
  expect_field(s, "cavities[0].b");
  s = example1();
  s.quad.lift_threshold = 7;
  expect_field(s, "quadrature.lift_threshold");
  s = example1();
  s.cavities.clear();
  expect_field(s, "cavities");
}

TEST(Validate, Idempotent) {
  const ProblemSpec once = validate(example4());
  EXPECT_EQ(validate(once), once);
}

TEST(Material, LossyBranchHasPositiveImaginaryPart) {
  const Complex k = wavenumber_from_material(1.0, Complex(4.0, 1.0), 1.0, 0.0);
  EXPECT_GT(k.imag(), 0.0);
  EXPECT_NEAR(std::abs(k * k - Complex(4.0, 1.0)), 0.0, 1e-15 * std::abs(Complex(4.0, 1.0)));
  const Complex c = wavenumber_from_material(2.0, 1.0, 1.0, 3.0);
  EXPECT_GE(c.imag(), 0.0);
  EXPECT_NEAR(std::abs(c * c - Complex(4.0, 6.0)), 0.0, 1e-14);
}

TEST(Material, ScaledFrequencyScalesEveryLayer) {
  const ProblemSpec s = with_scaled_frequency(validate(example4()), 2.0 * kPi);
  EXPECT_DOUBLE_EQ(s.wave.kappa0, 2.0 * kPi);
  EXPECT_NEAR(std::abs(s.cavities[1].layers[2].kappa - Complex(20.0 * kPi, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.cavities[2].layers[0].kappa - Complex(2.0, 1.0)), 0.0, 1e-15);
}

TEST(ConfigIo, RoundTripExample4) {
  const ProblemSpec s = validate(example4());
  const auto path = temp_file("ex4.json");
  save_spec(s, path);
  EXPECT_EQ(load_spec(path), s);
  EXPECT_EQ(parse_spec(dump_spec(s)), s);
  std::filesystem::remove(path);
}

TEST(ConfigIo, RoundTripIsLosslessForAwkwardValues) {
  ProblemSpec s = example1();
  s.wave.kappa0 = 0.1 + 0.2;
  s.wave.theta = -1.0 / 3.0;
  s.cavities[0].layers[0].kappa = Complex(std::nextafter(1.5, 2.0), 1e-300);
  s = validate(s);
  EXPECT_EQ(parse_spec(dump_spec(s)), s);
}

TEST(ConfigIo, MissingKappa0NamesField) {
  const std::string text = R"({"schema": 1, "polarization": "TM", "theta": 0, "N": 4,
    "cavities": [{"a": 0, "b": 1, "layers": [{"y_bottom": -1, "kappa": 1}]}]})";
  const std::string msg = error_message([&] { parse_spec(text); }, ErrorKind::schema);
  EXPECT_NE(msg.find("kappa0"), std::string::npos) << msg;
}

TEST(ConfigIo, ParseErrorReportsLine) {
  const std::string msg =
      error_message([] { parse_spec("{\n  \"schema\": 1,\n  oops\n}"); }, ErrorKind::parse);
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
}

TEST(ConfigIo, SchemaVersionMismatch) {
  const std::string msg = error_message(
      [] { parse_spec(R"({"schema": 2, "polarization": "TM"})"); }, ErrorKind::schema);
  EXPECT_NE(msg.find("schema version 2"), std::string::npos) << msg;
}

TEST(ConfigIo, LossyLayerAccepted) {
  const double k0 = 32 * kPi;
  const Complex k = k0 * std::sqrt(Complex(4.0, 1.0));
  char text[512];
  std::snprintf(text, sizeof text,
                R"({"schema": 1, "polarization": "TM", "kappa0": %.17g, "theta": 1.0471975511965976,
                    "N": 150, "cavities": [{"a": -0.03125, "b": 0.03125,
                    "layers": [{"y_bottom": -0.015625, "kappa": [%.17g, %.17g]}]}]})",
                k0, k.real(), k.imag());
  const ProblemSpec s = parse_spec(text);
  EXPECT_GT(s.cavities[0].layers[0].kappa.imag(), 0.0);
}

TEST(ConfigIo, LoadReportsPathOnFailure) {
  const auto path = temp_file("bad.json");
  {
    std::ofstream out(path);
    out << R"({"schema": 1, "polarization": "TX"})";
  }
  const std::string msg = error_message([&] { load_spec(path); }, ErrorKind::schema);
  EXPECT_NE(msg.find(path.string()), std::string::npos) << msg;
  EXPECT_NE(msg.find("$.polarization"), std::string::npos) << msg;
  std::filesystem::remove(path);
  EXPECT_THROW(load_spec(temp_file("missing.json")), Error);
}

TEST(ConfigIo, ShippedConfigsLoad) {
  for (const auto& entry : std::filesystem::directory_iterator(CAVITY_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    EXPECT_NO_THROW(load_spec(entry.path())) << entry.path();
  }
}
