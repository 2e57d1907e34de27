#include <random>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "syzkit/io.hpp"
#include "syzkit/parse.hpp"

using namespace syzkit;

TEST_CASE("series json round trip") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    auto s = testgen::rand_series(rng, -3, 8, 5, true);
    auto j = to_json(s);
    CHECK(series_from_json(Json::parse(j.dump())) == s);
    CHECK(series_from_json(j).truncation() == s.truncation());
  }
  CHECK(series_from_json(Json("1 - T^(1/2)")) == parse_series("1 - T^(1/2)"));
  CHECK_THROWS_AS(series_from_json(Json::parse(R"({"terms": [{"re": "1"}]})")), std::invalid_argument);
  CHECK_THROWS_AS(series_from_json(Json(3.5)), std::invalid_argument);
}

TEST_CASE("laurent json round trip") {
  auto W = parse_laurent("z1 + z2 + T(-1/2)*z1*z2 - i*T^3/z1");
  auto j = to_json(W);
  CHECK(laurent_from_json(Json::parse(j.dump())) == W);
  Json text{{"vars", {"z1", "z2"}}, {"text", "z1 + z2"}};
  CHECK(laurent_from_json(text) == parse_laurent("z1 + z2"));
  Json bad{{"vars", {"z1"}}, {"terms", {{{"exponent", {1, 2}}, {"coeff", "1"}}}}};
  CHECK_THROWS_AS(laurent_from_json(bad), std::invalid_argument);
}

TEST_CASE("svg and csv writers") {
  auto w = unweighted({{0, 0}, {1, 0}, {0, 1}});
  auto trop = tropical_hypersurface(w);
  auto am = amoeba_sample(w, Rational(1, 4), {10, 10, -2, 2});
  std::ostringstream svg;
  write_tropical_svg(svg, trop, &am);
  CHECK(svg.str().rfind("<svg", 0) == 0);
  CHECK(svg.str().find("</svg>") != std::string::npos);
  CHECK(svg.str().find("<line") != std::string::npos);

  auto m = milnor_unity(3);
  std::ostringstream base;
  write_fibration_base_svg(base, m, singular_rays(m), {0.0});
  CHECK(base.str().find("stroke=\"#b03030\"") != std::string::npos);

  RankTable t{"B_2_1", {{"HF(T,T)", {1, 2, 1}}, {"HF(T,D)", {1, 1}}}, {{"p", "2"}, {"q", "1"}}};
  std::ostringstream csv;
  write_rank_table_csv(csv, t);
  CHECK(csv.str() == "# p=2\n# q=1\nlabel,row,deg0,deg1,deg2\nB_2_1,\"HF(T,T)\",1,2,1\nB_2_1,\"HF(T,D)\",1,1,0\n");
  CHECK(to_json(t)["rows"][0]["graded"] == Json({1, 2, 1}));
}
