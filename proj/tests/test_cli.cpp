#include <cmath>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "mellinium/errors.hpp"
#include "oracles.hpp"

using namespace mellinium;
using namespace mellinium::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<ResultRecord> records(const std::string& text) {
  std::vector<ResultRecord> rs;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rs.push_back(record_from_json(line));
  return rs;
}

}  // namespace

TEST_CASE("records round trip through JSON unchanged") {
  ResultRecord r;
  r.operation = "transform";
  r.inputs = {{"fn", "exp_decay"}, {"fn.beta", "0.10000000000000001"}};
  r.alpha = Complex(0.1, -1.0 / 3.0);
  r.value = Complex(std::nextafter(1.0, 2.0), 1e-300);
  r.error_estimate = 3e-17;
  r.strip = FundamentalStrip(-kInf, 2.5);
  r.normalization = "gamma-p:2";
  const std::string line = to_json_line(r);
  const ResultRecord back = record_from_json(line);
  CHECK(back == r);
  CHECK(to_json_line(back) == line);

  ResultRecord skipped = r;
  skipped.value.reset();
  skipped.alpha.reset();
  skipped.strip.reset();
  skipped.skipped = true;
  CHECK(record_from_json(to_json_line(skipped)) == skipped);
  CHECK(to_json_line(skipped).find("\"value\": null") != std::string::npos);
}

TEST_CASE("every emitted record parses and reserializes byte for byte") {
  const Run r = call({"sweep", "eta", "--alpha-grid", "0.25:2:8"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  int n = 0;
  for (std::string line; std::getline(in, line); ++n) CHECK(to_json_line(record_from_json(line)) == line);
  CHECK(n == 8);
}

TEST_CASE("number and list parsers") {
  CHECK(parse_complex("2") == Complex(2, 0));
  CHECK(parse_complex("2.5,1") == Complex(2.5, 1));
  CHECK(parse_complex("1-2j") == Complex(1, -2));
  CHECK(parse_complex("1e-3+4.5j") == Complex(1e-3, 4.5));
  CHECK(parse_complex("-j") == Complex(0, -1));
  CHECK(parse_complex("3j") == Complex(0, 3));
  CHECK_THROWS_AS(parse_complex("abc"), MellinError);
  CHECK(parse_list("1..4,7.5") == std::vector<double>{1, 2, 3, 4, 7.5});
  const auto grid = parse_alpha_grid("0.5:3:6,2");
  REQUIRE(grid.size() == 6);
  CHECK(grid.front() == Complex(0.5, 2));
  CHECK(grid.back() == Complex(3, 2));
  CHECK_THROWS_AS(parse_alpha_grid("0:1"), MellinError);
  const auto m = parse_matrix("2\n1 0+1j\n0-1j 3\n");
  CHECK(m(0, 1) == Complex(0, 1));
  CHECK(m(1, 0) == Complex(0, -1));
  CHECK_THROWS_AS(parse_matrix("2\n1 0\n0\n"), MellinError);
}

TEST_CASE("documented invocations") {
  auto one = [](std::vector<std::string> args) {
    const Run r = call(args);
    REQUIRE(r.code == 0);
    const auto rs = records(r.out);
    REQUIRE(rs.size() == 1);
    return rs[0];
  };
  CHECK(std::abs(*one({"transform", "--fn", "exp_decay", "--beta", "1", "--alpha", "2", "--norm", "haar"}).value -
                 1.0) < 1e-10);
  CHECK(std::abs(*one({"zeta", "--alpha", "2", "--route", "realline"}).value - oracle::pi * oracle::pi / 6) <
        1e-9);
  CHECK(std::abs(*one({"greens", "--n", "3", "--distance", "1"}).value - 1.0) < 1e-12);

  const Run sweep = call({"sweep", "transform", "--fn", "exp_decay", "--beta", "2", "--alpha-grid", "0.5:3:6",
                          "--norm", "gamma"});
  REQUIRE(sweep.code == 0);
  const auto rs = records(sweep.out);
  REQUIRE(rs.size() == 6);
  for (const auto& r : rs) {
    CHECK_FALSE(r.skipped);
    CHECK(oracle::close(*r.value, std::pow(2.0, -r.alpha->real()), 1e-9));
  }

  const Run eta = call({"sweep", "eta", "--alpha-grid", "0.25:2:8"});
  for (const auto& r : records(eta.out))
    CHECK(oracle::close(*r.value, oracle::eta(*r.alpha), 1e-8));
}

TEST_CASE("sweep marks strip violations and keeps grid order") {
  const Run r = call({"sweep", "transform", "--fn", "exp_decay", "--alpha-grid", "-1:2:7"});
  REQUIRE(r.code == 0);
  const auto rs = records(r.out);
  REQUIRE(rs.size() == 7);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(rs[i].alpha->real() == doctest::Approx(-1 + 0.5 * i));
    CHECK(rs[i].skipped == (rs[i].alpha->real() <= 0));
    CHECK(rs[i].value.has_value() != rs[i].skipped);
  }
  const Run pole = call({"sweep", "zeta", "--alpha-grid", "0.5:1.5:3", "--route", "hankel"});
  REQUIRE(pole.code == 0);
  CHECK(records(pole.out)[1].skipped);
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 1);
  CHECK(call({"transform", "--alpha"}).code == 1);
  CHECK(call({"transform", "--fn", "nope", "--alpha", "1"}).code == 1);
  CHECK(call({"sweep", "eta"}).code == 1);
  const Run pole = call({"zeta", "--alpha", "1"});
  CHECK(pole.code == 2);
  CHECK(pole.err.find("PoleAtOne") != std::string::npos);
  const Run strip = call({"transform", "--fn", "exp_decay", "--alpha", "-1"});
  CHECK(strip.code == 2);
  CHECK(strip.err.find("StripViolation") != std::string::npos);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("sweeps are deterministic") {
  const std::vector<std::string> args = {"sweep", "convolve", "--fn", "exp_decay", "--fn2", "bose",
                                         "--alpha-grid", "1.5:3:4,0.5"};
  const Run a = call(args), b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("csv output has a header and one row per record") {
  const Run r = call({"power", "--spectrum", "1,2", "--alpha", "1", "--format", "csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == csv_header());
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
}
