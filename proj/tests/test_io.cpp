#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "bandapprox/io.hpp"
#include "fixtures.hpp"

using namespace bandapprox;

class SolutionRecord : public ::testing::TestWithParam<Family> {};

TEST_P(SolutionRecord, RoundTripsExactly) {
  const auto& s = fixtures::construction(GetParam()).solution;
  const std::string text = solution_to_json(s).dump();
  const FilterSolution back = solution_from_json(json::parse(text));
  EXPECT_TRUE(back == s);
  EXPECT_EQ(solution_to_json(back).dump(), text);
  // The rebuilt solution evaluates identically.
  const double x = fixtures::construction(GetParam()).bands.e1plus.mid();
  EXPECT_EQ(eval_solution(back, x), eval_solution(s, x));
}

INSTANTIATE_TEST_SUITE_P(AllFamilies, SolutionRecord, ::testing::ValuesIn(fixtures::all_families()),
                         [](const auto& info) { return to_string(info.param); });

TEST(Io, DoublesKeepEveryBit) {
  FilterSolution s = fixtures::construction(Family::Genus2Stiefel).solution;
  s.mu = 0.1 + 0.2;
  s.params.v1 = std::nextafter(0.0, 1.0);  // unused by Genus2, so free to set
  const auto back = solution_from_json(json::parse(solution_to_json(s).dump()));
  EXPECT_EQ(back.mu, s.mu);
  EXPECT_EQ(back.params.v1, s.params.v1);
  EXPECT_EQ(back.anchor, s.anchor);
}

TEST(Io, NonFiniteNumbers) {
  VerificationReport r;
  r.mu = INFINITY;
  r.degree_fit_residual = NAN;
  const json j = report_to_json(r);
  EXPECT_EQ(j["mu"], "inf");
  EXPECT_EQ(j["degree_fit_residual"], "nan");
}

TEST(Io, SchemaErrors) {
  json j = solution_to_json(fixtures::construction(Family::Genus2Stiefel).solution);
  json missing = j;
  missing.erase("modulus");
  EXPECT_THROW(solution_from_json(missing), FormatError);
  json wrong = j;
  wrong["family"] = "Genus9";
  EXPECT_THROW(solution_from_json(wrong), FormatError);
  wrong = j;
  wrong["n"] = 2.5;
  EXPECT_THROW(solution_from_json(wrong), FormatError);
  wrong = j;
  wrong["curve"]["branchpoints"] = json::array({1, 0, 2, 3, 4, 5});
  EXPECT_THROW(solution_from_json(wrong), FormatError);
}

TEST(Io, BandFiles) {
  const BandSystem b{{-1, 0}, {0.2, 0.4}, {0.6, 1}};
  const LoadedBands direct = load_bands({{"bands", bands_to_json(b)}});
  EXPECT_EQ(direct.bands, b);
  EXPECT_TRUE(direct.chart.is_identity());

  // E- wraps through infinity.
  const json wrap = {{"bands", {{"e_minus", {5, -3}}, {"e1_plus", {-2, -1}}, {"e2_plus", {1, 2}}}}};
  const LoadedBands w = load_bands(wrap);
  EXPECT_NO_THROW(w.bands.validate());
  EXPECT_NEAR(w.chart(-1), w.bands.e1plus.hi, 1e-14);

  const json charted = {{"bands", bands_to_json(b)}, {"chart", {{"from", {-1, 0, 1}}, {"to", {0, 1, 2}}}}};
  const LoadedBands ch = load_bands(charted);
  EXPECT_EQ(ch.bands.eminus.lo, -1);
  EXPECT_EQ(ch.bands.e2plus.hi, 1);

  const json overlap = {{"bands", {{"e_minus", {-1, 0.5}}, {"e1_plus", {0.2, 0.3}}, {"e2_plus", {0.6, 1}}}}};
  EXPECT_THROW(load_bands(overlap), FormatError);
  EXPECT_THROW(load_bands({{"bands", {{"e_minus", {-1, 0}}}}}), FormatError);
  EXPECT_THROW(load_bands({{"bands", {{"e_minus", {-1, "x"}}, {"e1_plus", {0.2, 0.3}}, {"e2_plus", {0.6, 1}}}}}),
               FormatError);
}

TEST(Io, Files) {
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), FileError);
  const std::string path = ::testing::TempDir() + "bad.json";
  std::ofstream(path) << "{\"bands\": ";
  EXPECT_THROW(read_json_file(path), FormatError);
  write_text(path, "{\"a\": 1}");
  EXPECT_EQ(read_json_file(path)["a"], 1);
  std::remove(path.c_str());
}
