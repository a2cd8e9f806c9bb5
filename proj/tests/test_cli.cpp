#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "prismslice/cli.hpp"
#include "prismslice/combinatorics.hpp"
#include "prismslice/json.hpp"

using namespace prismslice;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "prismslice");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("legendre") {
  auto r = run({"legendre", "--p", "2", "--n-max", "16", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["columns"].size() == 16);
  std::vector<u64> heights;
  for (const auto& c : j["columns"]) heights.push_back(c["height"].get<u64>());
  CHECK(std::vector<u64>(heights.begin(), heights.begin() + 8) == std::vector<u64>{0, 1, 1, 3, 3, 4, 4, 7});
  for (u64 n = 1; n <= 16; ++n) CHECK(heights[n - 1] == legendre_valuation(2, n));

  auto one = Json::parse(run({"legendre", "--p", "3", "--n-max", "1", "--format", "json"}).out);
  REQUIRE(one["columns"].size() == 1);
  CHECK(one["columns"][0]["bars"].empty());

  CHECK(run({"legendre", "--format", "bogus"}).code == 2);
  CHECK(run({"legendre", "--p", "4"}).code == 2);
  CHECK(run({"legendre", "--n-max", "0"}).code == 2);
  CHECK(run({"legendre", "--p", "3", "--n-max", "9", "--format", "svg"}).out.find("<svg") != std::string::npos);
  CHECK(run({"legendre", "--p", "2", "--n-max", "4"}).out.find("██▓ 3") != std::string::npos);
}

TEST_CASE("rsss") {
  auto tf = Json::parse(run({"rsss", "--p", "2", "--ring", "torsionfree", "--page", "e2"}).out);
  REQUIRE(!tf["entries"].empty());
  for (const auto& e : tf["entries"]) CHECK(e["x"].get<int>() % 2 == 0);

  auto r = run({"rsss", "--p", "3", "--ring", "fp", "--page", "einf", "--max-col", "20", "--format", "json"});
  REQUIRE(r.code == 0);
  auto inf = Json::parse(r.out);
  int with_fh = 0;
  for (const auto& e : inf["entries"])
    if (e.contains("f")) {
      ++with_fh;
      CHECK(e.contains("h"));
    }
  CHECK(with_fh + 1 == int(inf["entries"].size()));

  CHECK(run({"rsss", "--ring", "torsionfree", "--page", "einf"}).code == 2);
  CHECK(run({"rsss", "--ring", "bogus"}).code == 2);
  for (const char* fmt : {"json", "svg", "txt"}) {
    std::vector<std::string> args{"rsss", "--p", "3", "--ring", "fp", "--format", fmt};
    CHECK(run(args).out == run(args).out);
  }
}

TEST_CASE("slice-filtration") {
  auto r = run({"slice-filtration", "--p", "2", "--i", "1", "--j-max", "4", "--grading", "lambda", "--format", "json"});
  REQUIRE(r.code == 0);
  auto rows = Json::parse(r.out)["rows"];
  REQUIRE(rows.size() == 5);
  CHECK(rows[0]["generator"] == "full");
  const char* expr[] = {"[2]_A!", "[4]_A!", "[6]_A!", "[8]_A!"};
  for (int j = 1; j <= 4; ++j) {
    CHECK(rows[j]["expression"] == expr[j - 1]);
    CHECK(rows[j]["valuation"].get<std::int64_t>() == std::int64_t(legendre_valuation(2, 2 * u64(j))));
    CHECK(rows[j]["valuation"].get<std::int64_t>() > rows[j - 1]["valuation"].get<std::int64_t>());
  }
  CHECK(rows[1]["generator"] == "ξ_0");

  auto zero = run({"slice-filtration", "--j-max", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("0\tfull\t0") != std::string::npos);
  CHECK(zero.out.find("\n1\t") == std::string::npos);

  auto even = Json::parse(run({"slice-filtration", "--p", "3", "--i", "4", "--j-max", "10", "--grading", "even",
                               "--format", "json"})
                              .out)["rows"];
  for (std::size_t j = 1; j < even.size(); ++j)
    CHECK(even[j]["valuation"].get<std::int64_t>() > even[j - 1]["valuation"].get<std::int64_t>());

  CHECK(run({"slice-filtration", "--i", "0"}).code == 2);
  CHECK(run({"slice-filtration", "--grading", "odd"}).code == 2);
}

TEST_CASE("prism-verify") {
  auto q = run({"prism-verify", "--model", "qcrys", "--imax", "3", "--jmax", "3"});
  CHECK(q.code == 0);
  auto rep = Json::parse(q.out);
  CHECK(rep["ok"] == true);
  CHECK(rep["prism_condition"] == true);
  CHECK(rep.contains("warning_identity"));
  for (const char* key : {"extended_units", "corollary", "norm_lift", "q_legendre"}) CHECK(!rep[key].empty());

  for (const char* m : {"crys", "perfq", "kisin"}) {
    auto r = run({"prism-verify", "--model", m, "--p", "3"});
    CHECK(r.code == 0);
    CHECK_FALSE(Json::parse(r.out).contains("warning_identity"));
  }
  auto perf = Json::parse(run({"prism-verify", "--model", "perfq", "--p", "2", "--depth", "2"}).out);
  CHECK(perf["norm_lift"][0].contains("witt_diagram"));

  CHECK(run({"prism-verify", "--prec-m", "1"}).code == 2);
  CHECK(run({"prism-verify", "--model", "nope"}).code == 2);
  CHECK(run({"prism-verify", "--p", "6"}).code == 2);
  CHECK(run({"prism-verify", "--imax", "4", "--jmax", "3"}).code == 2);
  CHECK(run({"prism-verify", "--p", "3", "--prec-m", "60"}).code == 2);
}

TEST_CASE("witt") {
  auto n = run({"witt", "--base", "zmod:2^6", "norm", "--x", "3,1"});
  CHECK(n.code == 0);
  CHECK(n.out == "(3, 0, 10)\n");
  CHECK(run({"witt", "norm", "--base", "zmod:2^6", "--x", "3,1"}).out == "(3, 0, 10)\n");
  // teichmuller input: ghost components are powers, 2^9 = 26 mod 81
  CHECK(run({"witt", "--base", "zmod:3^4", "ghost", "--x", "2,0,0"}).out == "(2, 8, 26)\n");
  // [1] + [2] = (3, -(1*2^2 + 1^2*2)) in W_2(Z/9)
  CHECK(run({"witt", "--base", "zmod:3^2", "add", "--x", "1,0", "--y", "2,0"}).out == "(3, 3)\n");
  CHECK(run({"witt", "--base", "fpx:2,3", "mul", "--x", "0,1;1", "--y", "1;0,0,1"}).code == 0);

  auto c = run({"witt", "--base", "fpx:3,4", "check"});
  CHECK(c.code == 0);
  CHECK(c.out.find("FAIL") == std::string::npos);
  CHECK(run({"witt", "--base", "zmod:5^3", "check", "--length", "2"}).code == 0);

  CHECK(run({"witt", "--base", "zmod:4^2", "norm", "--x", "1"}).code == 2);
  CHECK(run({"witt", "--base", "zmod:2^6", "norm", "--x", "a,1"}).code == 2);
  CHECK(run({"witt", "--base", "nope:2", "norm", "--x", "1"}).code == 2);
  CHECK(run({"witt", "--base", "zmod:2^6", "add", "--x", "1,1"}).code == 2);
  CHECK(run({"witt", "--base", "zmod:2^6"}).code == 2);
  CHECK(run({"witt", "--base", "fpx:2,2", "norm", "--x", "1,1,1"}).code == 2);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
