#include <gtest/gtest.h>

#include <filesystem>

#include "koszul/io.hpp"
#include "test_util.hpp"

using namespace koszul;

namespace {

std::string fixture_path(const std::string &name) {
  return std::string(KOSZUL_FIXTURE_DIR) + "/" + name + ".json";
}

json minimal_fixture() {
  return json::parse(R"({
    "id": "t", "m": 1, "d": 2,
    "F": [[[[1.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]],
    "H": [[[[0.25, 0.0]]]]
  })");
}

} // namespace

TEST(Polynomials, JsonRoundTripIsBitExact) {
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = koszul::testing::random_poly(trial % 6);
    const auto back = poly_from_json(json::parse(poly_to_json(p).dump()));
    ASSERT_EQ(back.coeffs().size(), p.coeffs().size());
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
      EXPECT_EQ(back.coeffs()[i], p.coeffs()[i]);
  }
}

TEST(Fixture, MinimalParses) {
  const auto fx = fixture_from_json(minimal_fixture());
  EXPECT_EQ(fx.m, 1);
  EXPECT_EQ(fx.d, 2);
  EXPECT_EQ(fx.f(0, 1), ComplexPolynomial::monomial(1, 0.5));
  EXPECT_EQ(fx.norm_mode, NormMode::equal);
  EXPECT_FALSE(fx.grid.has_value());
}

TEST(Fixture, ShippedFilesRoundTrip) {
  for (const auto &entry : std::filesystem::directory_iterator(KOSZUL_FIXTURE_DIR)) {
    if (entry.path().extension() != ".json")
      continue;
    const auto fx = load_fixture(entry.path().string());
    const auto again = fixture_from_json(json::parse(fixture_to_json(fx).dump()));
    EXPECT_EQ(again.f, fx.f) << entry.path();
    EXPECT_EQ(again.h, fx.h) << entry.path();
    EXPECT_EQ(fixture_to_json(again).dump(), fixture_to_json(fx).dump());
  }
}

TEST(Fixture, RejectsShapeMismatch) {
  auto j = minimal_fixture();
  j["d"] = 3;
  EXPECT_THROW(fixture_from_json(j), input_error);
}

TEST(Fixture, RejectsDegreeAboveCap) {
  auto j = minimal_fixture();
  j["degree_cap"] = 0;
  EXPECT_THROW(fixture_from_json(j), input_error);
}

TEST(Fixture, RejectsBadNormMode) {
  auto j = minimal_fixture();
  j["norm_mode"] = "sometimes";
  EXPECT_THROW(fixture_from_json(j), input_error);
}

TEST(Fixture, RejectsBadGrid) {
  auto j = minimal_fixture();
  j["grid"] = {{"radii", {0.5, 1.0}}, {"angles", 8}};
  EXPECT_THROW(fixture_from_json(j), input_error);
  j["grid"] = {{"radii", {0.5}}, {"angles", 0}};
  EXPECT_THROW(fixture_from_json(j), input_error);
}

TEST(Fixture, RejectsMissingFieldsAndBadJson) {
  auto j = minimal_fixture();
  j.erase("H");
  EXPECT_THROW(fixture_from_json(j), input_error);
  EXPECT_THROW(load_fixture(fixture_path("does_not_exist")), input_error);
}

TEST(Fixture, EmptyColumnBlock) {
  const auto fx = load_fixture(fixture_path("empty_b"));
  EXPECT_EQ(fx.d, 0);
  EXPECT_EQ(fx.f.cols(), 0);
}

TEST(Solution, RoundTripIsBitExact) {
  const auto g = koszul::testing::random_poly_matrix(3, 1, 4);
  const auto back = solution_from_json(json::parse(solution_to_json("x", g).dump()));
  EXPECT_EQ(back, g);
}

TEST(ResidualCsv, Layout) {
  const DiscGrid grid({0.5}, 2);
  const auto csv = residual_csv(grid, {0.0, 1.5});
  EXPECT_EQ(csv, "index,re,im,abs_residual\n0,0.5,0,0\n1,-0.5,6.123233995736766e-17,1.5\n");
}
