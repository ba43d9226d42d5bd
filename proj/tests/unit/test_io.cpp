#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gabor/error.hpp"
#include "gabor/io.hpp"
#include "oracles.hpp"

using namespace gabor;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

}  // namespace

TEST(Io, ComplexNumbers) {
  EXPECT_EQ(complex_from_json(json::parse("[1.5, -2]")), cplx(1.5, -2.0));
  EXPECT_EQ(complex_from_json(json::parse("3")), cplx(3.0, 0.0));
  EXPECT_EQ(code_of([] { complex_from_json(json::parse("[1]")); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { complex_from_json(json::parse("\"x\"")); }), Errc::ConfigError);
}

TEST(Io, WindowRoundTrip) {
  oracle::Rng rng(71);
  const Window w{oracle::random_general_window(rng, 5)};
  const auto back = validate(pole_terms_from_json(json::parse(window_to_json(w).dump())));
  const auto a = terms_of(w), b = terms_of(back);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].a, b[k].a);
    EXPECT_EQ(a[k].w, b[k].w);
    EXPECT_EQ(a[k].j, b[k].j);
  }
}

TEST(Io, WindowDefaultsMultiplicity) {
  const auto t = pole_terms_from_json(json::parse(R"({"terms":[{"a":[1,0],"w":[1,0]}]})"));
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].j, 1);
}

TEST(Io, MalformedWindows) {
  for (const char* doc : {R"({})", R"({"terms":3})", R"({"terms":[{"a":[1,0]}]})",
                          R"({"terms":[{"a":[1,0],"w":[1,0],"j":1.5}]})", R"([1,2])"})
    EXPECT_EQ(code_of([&] { pole_terms_from_json(json::parse(doc)); }), Errc::ConfigError) << doc;
}

TEST(Io, UniversalSetDocument) {
  const auto s = build_universal(0.5, 1);
  const json j = universal_to_json(s);
  EXPECT_EQ(j["density"], "4/3");
  EXPECT_EQ(j["N1"], 2);
  EXPECT_EQ(j["period"], 3.0);
  const auto p = point_set_from_json(json::parse(j.dump()));
  EXPECT_EQ(p.base_points(), s.base_points());
  EXPECT_EQ(p.period(), s.period());
}

TEST(Io, MalformedPointSet) {
  EXPECT_EQ(code_of([] { point_set_from_json(json::parse(R"({"period":2})")); }), Errc::ConfigError);
  EXPECT_EQ(code_of([] { point_set_from_json(json::parse(R"({"base_points":[0,3],"period":2})")); }),
            Errc::ConfigError);
  EXPECT_EQ(code_of([] { point_set_from_json(json::parse(R"({"base_points":"x","period":2})")); }),
            Errc::ConfigError);
}

TEST(Io, SegmentRoundTrip) {
  const auto s = build_universal(0.5, 2);
  const auto fam = symbol_family(validate({{1.0, 0.11, 1}, {cplx(0.0, 1.0), -0.3, 1}}));
  for (const auto& seg : {build_segments(0.37, s, fam, 2)[1], erase_row(build_segments(0.81, s, fam, 1)[0])}) {
    const auto back = segment_from_json(json::parse(segment_to_json(seg).dump()));
    EXPECT_EQ(back.xi, seg.xi);
    EXPECT_EQ(back.M, seg.M);
    EXPECT_EQ(back.N1, seg.N1);
    EXPECT_EQ(back.period_index, seg.period_index);
    EXPECT_EQ(back.erased_row, seg.erased_row);
    EXPECT_EQ(back.roles, seg.roles);
    EXPECT_TRUE(back.matrix == seg.matrix);
    ASSERT_EQ(back.rows.size(), seg.rows.size());
    for (std::size_t r = 0; r < seg.rows.size(); ++r) {
      EXPECT_EQ(back.rows[r].lambda_index, seg.rows[r].lambda_index);
      EXPECT_EQ(back.rows[r].b, seg.rows[r].b);
      EXPECT_EQ(back.rows[r].t, seg.rows[r].t);
    }
  }
}

TEST(Io, MalformedSegments) {
  const auto s = build_universal(0.5, 1);
  const auto fam = symbol_family(validate({{1.0, 0.2, 1}}));
  const json good = segment_to_json(build_segments(0.3, s, fam, 1)[0]);
  json ragged = good;
  ragged["matrix"][1].erase(0);
  EXPECT_EQ(code_of([&] { segment_from_json(ragged); }), Errc::ConfigError);
  json role = good;
  role["rows"][0]["role"] = "middle";
  EXPECT_EQ(code_of([&] { segment_from_json(role); }), Errc::ConfigError);
  json missing = good;
  missing.erase("xi");
  EXPECT_EQ(code_of([&] { segment_from_json(missing); }), Errc::ConfigError);
  json short_rows = good;
  short_rows["rows"].erase(0);
  EXPECT_EQ(code_of([&] { segment_from_json(short_rows); }), Errc::ConfigError);
}

TEST(Io, EstimateCsv) {
  FrameEstimate e;
  e.xi = {0.25, 0.75};
  e.sigma_min = {0.1, 1.0 / 3.0};
  e.sigma_max = {2.0, 3.0};
  std::ostringstream os;
  write_estimate_csv(os, e);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "xi,sigma_min,sigma_max");
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "0.75,0.33333333333333331,3");
  const json j = estimate_summary(e);
  for (const char* key : {"A_est", "B_est", "periods", "xi_steps", "eta"}) EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Io, FormatDoubleRoundTrips) {
  oracle::Rng rng(72);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::ldexp(rng.uniform(-1.0, 1.0), rng.integer(-300, 300));
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
}

TEST(Io, FamilyDocument) {
  const auto g = std::get<GeneralWindow>(validate({{1.0, 0.3, 2}, {2.0, 0.1, 1}}));
  const json j = family_to_json(general_symbol_family(g));
  EXPECT_EQ(j["M"], 3);
  EXPECT_EQ(j["m"].size(), 3u);
  EXPECT_EQ(j["trick_tables"].size(), 2u);
  EXPECT_EQ(j["m"][0][0].count("p"), 1u);
}

TEST(Io, ReadJsonFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad = dir / "gabor_io_bad.json";
  std::ofstream(bad) << "{not json";
  EXPECT_EQ(code_of([&] { read_json_file(bad.string()); }), Errc::ConfigError);
  EXPECT_EQ(code_of([&] { read_json_file((dir / "gabor_io_missing.json").string()); }), Errc::ConfigError);
  const auto good = dir / "gabor_io_good.json";
  std::ofstream(good) << R"({"x": 1})";
  EXPECT_EQ(read_json_file(good.string())["x"], 1);
  std::filesystem::remove(bad);
  std::filesystem::remove(good);
}
