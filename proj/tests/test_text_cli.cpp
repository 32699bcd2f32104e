#include <random>
#include <sstream>

#include "doctest.h"
#include "genquad/cli.hpp"
#include "genquad/error.hpp"
#include "genquad/report.hpp"
#include "genquad/text.hpp"
#include "oracles.hpp"

using namespace genquad;

namespace {

std::size_t parse_error_at(std::string_view text, const FieldContext& ctx) {
  try {
    parse_form(text, ctx);
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("no parse error for " << text);
  return 0;
}

struct Run {
  int code;
  report::Json json;
  std::string raw;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream diag;
  const int code = cli::run_command(args, out, diag);
  return {code, report::Json::parse(out.str()), out.str()};
}

}  // namespace

TEST_CASE("parse elements") {
  const FieldContext k2(2);
  const FieldContext k5(5);
  CHECK(parse_element("2+1s", k2) == k2.element(2, 1));
  CHECK(parse_element("58-41s", k2) == k2.element(58, -41));
  CHECK(parse_element(" 3/2 + 1/2 s ", k5) == k5.element(make_rational(3, 2), make_rational(1, 2)));
  CHECK(parse_element("-7", k2) == FieldElement(-7));
  CHECK(parse_element("0-2s", k5) == k5.element(0, -2));
  // Leading zeros are decimal.
  CHECK(parse_element("010", k2) == FieldElement(10));
  CHECK(parse_element("08/09", k2) == FieldElement(make_rational(8, 9)));
  CHECK_THROWS_AS(parse_element("1/0", k2), ParseError);
  CHECK_THROWS_AS(parse_element("2+", k2), ParseError);
  CHECK_THROWS_AS(parse_element("2+1sx", k2), ParseError);
  CHECK_THROWS_AS(parse_element("", k2), ParseError);
}

TEST_CASE("parse forms") {
  const FieldContext k2(2);
  const GeneralizedForm a = parse_form("z1^2 + z2*t(z2)", k2);
  CHECK(a.r() == 2);
  CHECK(a.coeff({1, Flag::plain}, {1, Flag::plain}) == FieldElement(1));
  CHECK(a.coeff({2, Flag::plain}, {2, Flag::conj}) == FieldElement(1));
  CHECK(proper_variables(a) == std::set<int>{2});

  const GeneralizedForm g = parse_form("4*z1^2 - 4*z1*t(z1) + t(z1)^2", k2);
  CHECK(g.coeff({1, Flag::plain}, {1, Flag::conj}) == FieldElement(-4));
  CHECK(classify_definiteness(g) == DefinitenessClass::totally_positive_semidefinite_only);

  CHECK(parse_form("(2+1s)*z1^2", k2).coeff({1, Flag::plain}, {1, Flag::plain}) == k2.element(2, 1));
  CHECK(parse_form("z1^2 + z1^2", k2).coeff({1, Flag::plain}, {1, Flag::plain}) == FieldElement(2));
  CHECK(parse_form("t(z1)*z1", k2) == parse_form("z1*t(z1)", k2));
  CHECK(parse_form("0", k2).coeffs().empty());
  CHECK(parse_form("z1^2", k2, 3).r() == 3);
}

TEST_CASE("parse errors carry positions") {
  const FieldContext k2(2);
  CHECK(parse_error_at("z0^2", k2) == 1);
  CHECK(parse_error_at("z1", k2) == 0);
  CHECK(parse_error_at("z1^3", k2) == 3);
  CHECK(parse_error_at("z1*z2*z3", k2) == 5);
  CHECK(parse_error_at("1/0*z1^2", k2) == 2);
  CHECK(parse_error_at("z1^2 +", k2) == 6);
  CHECK(parse_error_at("z1^2 )", k2) == 5);
  CHECK(parse_error_at("q1^2", k2) == 0);
}

TEST_CASE("printing and parsing round trip") {
  std::mt19937_64 rng(200);
  for (int i = 0; i < 200; ++i) {
    const FieldContext ctx(i % 2 == 0 ? 2 : 5);
    const GeneralizedForm g = oracle::random_generalized(ctx, rng, 1 + static_cast<int>(rng() % 3), 6);
    const std::string text = to_string(g);
    CAPTURE(text);
    const GeneralizedForm back = parse_form(text, ctx, g.r());
    CHECK(back == g);
    CHECK(to_string(back) == text);
    const FieldElement x = oracle::random_integer(ctx, rng, 30) / FieldElement(1 + static_cast<long>(rng() % 4));
    CHECK(parse_element(to_string(x), ctx) == x);
  }
}

TEST_CASE("cli classify and exit codes") {
  const auto c = run({"classify", "--d", "2", "z1*t(z1)"});
  CHECK(c.code == cli::ok);
  CHECK(c.json["result"]["definiteness"] == "not_semidefinite");
  CHECK(c.json["status"] == "ok");

  CHECK(run({"classify", "--d", "2", "z1^"}).code == cli::parse_error);
  CHECK(run({"classify", "--d", "2", "z1^"}).json["result"]["position"] == 3);
  CHECK(run({"classify", "--d", "4", "z1^2"}).code == cli::precondition_violation);
  CHECK(run({"represent", "--d", "5", "--target", "3/2", "z1^2"}).code == cli::precondition_violation);
  CHECK(run({"represent", "--d", "2", "--target", "2+1s", "4*z1^2 - 4*z1*t(z1) + t(z1)^2"}).code ==
        cli::precondition_violation);
  CHECK(run({}).code == cli::usage_error);
  CHECK(run({"classify", "--bogus"}).code == cli::usage_error);
}

TEST_CASE("cli represent, indecomposables and counterexample") {
  const auto r = run({"represent", "--d", "5", "--target", "3/2+1/2s", "z1^2+z2^2+z3^2"});
  CHECK(r.code == cli::ok);
  CHECK(r.json["result"]["verdict"]["tag"] == "found");
  CHECK(r.json["result"]["verdict"]["witness"][0]["a"] == "1/2");

  const auto h = run({"represent", "--d", "2", "--target", "2+1s", "--height", "3", "z1^2"});
  CHECK(h.json["result"]["verdict"]["tag"] == "none_within_height");

  const auto ind = run({"indecomposables", "--d", "2", "--trace-bound", "8"});
  CHECK(ind.code == cli::ok);
  CHECK(ind.json["result"]["elements"].size() == 5);

  const auto p = run({"paper", "counterexample", "--trace-bound", "20"});
  CHECK(p.code == cli::ok);
  CHECK(p.json["status"] == "ok");
  CHECK(p.raw.find("\"3\"") != std::string::npos);
  CHECK(p.json["result"]["subform_failure_target"]["a"] == "3");
  CHECK(p.json["result"]["subform_failure_target"]["b"] == "1");

  const auto t = run({"paper", "theorem", "--trace-bound", "6"});
  CHECK(t.code == cli::ok);
}

TEST_CASE("cli output is byte stable") {
  const std::vector<std::string> args{"universal", "--d", "5", "--trace-bound", "10", "z1^2+z2^2+z3^2"};
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.code == cli::ok);
  CHECK(a.raw == b.raw);
  auto par = args;
  par.insert(par.end(), {"--parallel", "2"});
  auto c = run(par);
  c.json["inputs"].erase("parallel");
  auto a2 = a.json;
  a2["inputs"].erase("parallel");
  CHECK(c.json == a2);
}

TEST_CASE("malformed input never escapes as an exception") {
  std::mt19937_64 rng(17);
  const std::string alphabet = "zt()^*+-/0123456789s ";
  for (int i = 0; i < 300; ++i) {
    std::string text;
    const int len = static_cast<int>(rng() % 12);
    for (int k = 0; k < len; ++k) text += alphabet[rng() % alphabet.size()];
    int code = -1;
    CHECK_NOTHROW(code = run({"classify", "--d", "2", "--", text}).code);
    CAPTURE(text);
    CHECK((code == cli::ok || code == cli::parse_error || code == cli::precondition_violation));
  }
}
