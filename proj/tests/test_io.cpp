#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gwlc/errors.hpp"
#include "gwlc/io.hpp"
#include "gwlc/leaf_series.hpp"
#include "gwlc/monte_carlo.hpp"
#include "gwlc/offspring.hpp"

using namespace gwlc;

namespace {

/// Writes content to a fresh temp file and returns its path.
std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("gwlc_io_test_") + name + ".json";
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("built-in names resolve without touching the filesystem") {
  CHECK(load_distribution("binary").probs == OffspringDistribution::binary().probs);
  CHECK(load_distribution("p1demo").probs == OffspringDistribution::p1demo().probs);
}

TEST_CASE("descriptor files accept string pairs, fractions and exact decimals") {
  const std::string path = write_temp(
      "pairs", R"({"probs": [["3","10"], "4/10", "0.3"]})");
  OffspringDistribution d = load_distribution(path);
  std::remove(path.c_str());
  CHECK(d.probs == OffspringDistribution::p1demo().probs);
  CHECK(d.critical);
}

TEST_CASE("descriptor files reject binary floats and malformed payloads") {
  struct Case {
    const char* name;
    const char* body;
  };
  const Case cases[] = {
      {"float", R"({"probs": [0.5, 0, 0.5]})"},
      {"nonarray", R"({"probs": "binary"})"},
      {"missing", R"({"mean": 1})"},
      {"pair_len", R"({"probs": [["1","2","3"]]})"},
      {"not_json", "probs: [1]"},
  };
  for (const Case& c : cases) {
    const std::string path = write_temp(c.name, c.body);
    CHECK_THROWS_AS(load_distribution(path), Error);
    std::remove(path.c_str());
  }
  CHECK_THROWS_AS(load_distribution("gwlc_io_no_such_file.json"), Error);
}

TEST_CASE("rational rendering splits numerator and denominator") {
  const Rational v = make_rational(-21, 1024);
  CHECK(numerator_string(v) == "-21");
  CHECK(denominator_string(v) == "1024");
  CHECK(numerator_string(Rational(7)) == "7");
  CHECK(denominator_string(Rational(7)) == "1");
}

TEST_CASE("doubles render round-trip exact") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_double(0.1)) == 0.1);
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("conditional-law CSV uses the pinned header and exact columns") {
  ConditionalLaw law;
  law.ell = 2;
  law.exact = true;
  law.masses = {make_rational(2, 3), make_rational(1, 3)};
  law.masses_f64 = {to_double(law.masses[0]), to_double(law.masses[1])};
  const std::string expected =
      "ell,t,mass_num,mass_den,mass_float\n"
      "2,1,2,3,0.66666666666666663\n"
      "2,2,1,3,0.33333333333333331\n";
  CHECK(csv_conditional_law(law) == expected);

  ConditionalLaw floats;
  floats.ell = 1;
  floats.exact = false;
  floats.masses_f64 = {1.0};
  CHECK(csv_conditional_law(floats) ==
        "ell,t,mass_num,mass_den,mass_float\n1,1,,,1\n");
}

TEST_CASE("estimate CSV carries the full provenance columns") {
  McResult result;
  result.ell = 1;
  result.seed = 9;
  ConditionalEstimate e;
  e.ell = 1;
  e.t = 1;
  e.point = 1.0;
  e.std_err = 0.0;
  e.accepted = 10;
  e.trials = 25;
  e.overflowed = 3;
  e.seed = 9;
  result.estimates.push_back(e);
  CHECK(csv_estimates(result) ==
        "ell,t,point,stderr,accepted,trials,overflowed,seed\n"
        "1,1,1,0,10,25,3,9\n");
}

TEST_CASE("leaf table rows carry both asymptotic forms") {
  LawContext ctx(OffspringDistribution::binary());
  auto rows = build_leaf_table(ctx, 3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ell == 1);
  CHECK(rows[0].exact == make_rational(1, 2));
  CHECK(rows[2].exact == make_rational(1, 16));
  // Binary: the double-factorial form reproduces the law exactly.
  for (const auto& r : rows) CHECK(r.df_ratio == doctest::Approx(1.0).epsilon(1e-12));

  const std::string csv = csv_leaf_table(rows);
  CHECK(csv.rfind("ell,mass_num,mass_den,mass_float,df_form,power_form,"
                  "df_ratio,power_ratio\n", 0) == 0);
  CHECK(csv.find("\n3,1,16,0.0625,") != std::string::npos);
}

TEST_CASE("moment and tail tables serialize with pinned headers") {
  LawContext ctx(OffspringDistribution::binary());
  VMomentRow row = build_vmoment_row(ctx, 7);
  CHECK(row.mean == Rational(13));
  CHECK(row.variance == Rational(0));

  const std::string csv = csv_vmoments({row});
  CHECK(csv ==
        "ell,mean_num,mean_den,mean_float,variance_num,variance_den,variance_float,"
        "mean_gap_scaled,variance_scaled\n"
        "7,13,1,13,0,1,0,0.3779644730092272,0\n");

  auto tail = build_tail_rows(ctx, {100, 10000});
  REQUIRE(tail.size() == 2);
  CHECK(tail[0].cutoff == 0);
  CHECK(tail[0].deficit == 1.0);
  CHECK(tail[1].cutoff == 1);
  const std::string tcsv = csv_tail(tail, 0.0);
  CHECK(tcsv.rfind("ell,tau,cutoff,deficit,limit\n", 0) == 0);
  CHECK(tcsv.find("\n100,") != std::string::npos);
}

TEST_CASE("series dump is a flat array of exact string pairs") {
  const PowerSeries f = solve_leaf_series(OffspringDistribution::binary(), 4);
  CHECK(json_series(f) ==
        "[[\"0\",\"1\"],[\"1\",\"2\"],[\"1\",\"8\"],[\"1\",\"16\"],[\"5\",\"128\"]]\n");
}

TEST_CASE("JSON law payloads parse back with the same content") {
  LawContext ctx(OffspringDistribution::p1demo());
  ConditionalLaw law = ctx.plugin_conditional_law(2);
  const nlohmann::json doc = nlohmann::json::parse(json_conditional_law(law));
  CHECK(doc["ell"] == 2);
  CHECK(doc["kind"] == "plugin");
  CHECK(doc["exact"] == true);
  REQUIRE(doc["masses"].size() == 2);
  CHECK(doc["masses"][0]["t"] == 1);
  CHECK(doc["masses"][0]["num"] == "3");
  CHECK(doc["masses"][0]["den"] == "10");
  CHECK(doc["masses"][1]["num"] == "3");
  CHECK(doc["masses"][1]["den"] == "20");
  CHECK(doc["residual_num"] == "11");
  CHECK(doc["residual_den"] == "20");

  McResult mc;
  mc.ell = 1;
  mc.seed = 3;
  mc.accepted = 5;
  mc.trials = 8;
  ConditionalEstimate e;
  e.t = 1;
  e.point = 1.0;
  mc.estimates.push_back(e);
  const nlohmann::json est = nlohmann::json::parse(json_estimates(mc));
  CHECK(est["kind"] == "monte-carlo");
  CHECK(est["seed"] == 3);
  CHECK(est["estimates"][0]["point"] == 1.0);

  const nlohmann::json tail =
      nlohmann::json::parse(json_tail(build_tail_rows(ctx, {1000}), 0.4));
  CHECK(tail["limit"] == 0.4);
  CHECK(tail["rows"][0]["deficit"] == 1.0);
}
