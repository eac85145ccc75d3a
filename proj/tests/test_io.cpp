#include <doctest.h>

#include "minkval/body_zoo.hpp"
#include "minkval/directions.hpp"
#include "minkval/errors.hpp"
#include "minkval/io.hpp"
#include "minkval/operators.hpp"

using namespace minkval;

TEST_CASE("body JSON round-trips byte for byte") {
  for (int n : {1, 2, 3, 4}) {
    const auto corpus = make_corpus({n, 25, 7});
    for (const auto& p : corpus) {
      const std::string text = dump_body(p);
      const Polytope q = parse_body(text);
      CHECK(q == p);
      CHECK(dump_body(q) == text);
    }
  }
  const std::string point = "{\n  \"dim\": 2,\n  \"vertices\": [\n    [\n      \"1/2\",\n      \"-3/1\"\n    ]\n  ]\n}\n";
  CHECK(dump_body(parse_body(point)) == point);
}

TEST_CASE("body reader canonicalizes arbitrary point lists") {
  const Polytope p = parse_body(R"({"dim":2,"vertices":[["1","1"],["0","0"],["1/2","1/2"],["1","0"],["0","1"],["0","0"]]})");
  CHECK(p == unit_cube(2));
  CHECK(p.size() == 4);
}

TEST_CASE("body reader rejects malformed input") {
  const char* bad[] = {
      R"({"dim":2,"vertices":[["2/4","0"]]})",          // unreduced
      R"({"dim":2,"vertices":[["1/0","0"]]})",          // zero denominator
      R"({"dim":2,"vertices":[["1/-2","0"]]})",         // negative denominator
      R"({"dim":2,"vertices":[[1,0]]})",                // numbers instead of strings
      R"({"dim":2,"vertices":[["0.5","0"]]})",          // decimal
      R"({"dim":2,"vertices":[["+1","0"]]})",           // sign
      R"({"dim":2,"vertices":[[" 1","0"]]})",           // whitespace
      R"({"dim":2,"vertices":[["0/3","0"]]})",          // zero with a denominator
      R"({"dim":2,"vertices":[["1","0","0"]]})",        // arity
      R"({"dim":2,"vertices":[]})",                     // empty
      R"({"dim":0,"vertices":[[]]})",                   // dimension
      R"({"dim":9,"vertices":[["0","0","0","0","0","0","0","0","0"]]})",
      R"({"dim":2.5,"vertices":[["0","0"]]})",
      R"({"dim":2,"vertices":[["0","0"]],"extra":1})",  // unknown key
      R"({"vertices":[["0","0"]]})",
      R"([["0","0"]])",
      R"({"dim":2,"vertices":[["0","0"]])",  // truncated
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_body(text), FormatError);
  }
}

TEST_CASE("FNV-1a reference values") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a("foobar") == 0x85944171f73967e8ULL);
  CHECK(hash_string(0x1234) == "fnv1a:0000000000001234");
  CHECK(body_hash(simplex(2)) == body_hash(parse_body(dump_body(simplex(2)))));
  CHECK(body_hash(simplex(2)) != body_hash(unit_cube(2)));
}

TEST_CASE("operator JSON round-trips catalog and composite trees") {
  for (int n : {2, 3}) {
    for (const auto& name : builtin_names()) {
      const OperatorSpec op = builtin(name, n);
      const Json j = operator_to_json(op);
      const OperatorSpec back = operator_from_json(parse_json(dump(j)), n);
      CHECK(back == op);
      CHECK(dump(operator_to_json(back)) == dump(j));
      CHECK(operator_from_json(Json{{"op", "builtin"}, {"name", name}}, n) == op);
    }
  }
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = make_rational(1, 2);
  m(1, 1) = -3;
  const OperatorSpec tree = OperatorSpec::sum({OperatorSpec::scaled(make_rational(3, 2), OperatorSpec::linear(m)),
                                               OperatorSpec::reflect(), OperatorSpec::dvol_segment(segment({1, 1}))});
  CHECK(operator_from_json(operator_to_json(tree), 2) == tree);
}

TEST_CASE("operator JSON accepts the documented node forms") {
  const auto j = parse_json(R"({"op":"sum","args":[{"op":"const","body":{"dim":2,"vertices":[["-1","0"],["1","0"]]}},
                                                   {"op":"vol_segment","segment":{"dim":2,"vertices":[["0","-1"],["0","1"]]}}]})");
  const OperatorSpec op = operator_from_json(j, 2);
  OperatorSpec expected = builtin("cylinder", 2);
  CHECK(apply(op, unit_cube(2)) == apply(expected, unit_cube(2)));

  BuiltinParams params;
  params.a = 3;
  params.b = make_rational(1, 2);
  const auto ab = parse_json(R"({"op":"builtin","name":"ab_reflect","params":{"a":"3","b":"1/2"}})");
  CHECK(operator_from_json(ab, 2) == builtin("ab_reflect", 2, params));

  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"warp"})"), 2), FormatError);
  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"sum"})"), 2), FormatError);
  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"sum","args":[]})"), 2), FormatError);
  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"scale","factor":"-1","arg":{"op":"dbody"}})"), 2),
                  FormatError);
  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"dbody","body":{}})"), 2), FormatError);
  CHECK_THROWS_AS(operator_from_json(parse_json(R"({"op":"builtin","name":"nope"})"), 2), FormatError);
  CHECK_THROWS_AS(
      operator_from_json(parse_json(R"({"op":"builtin","name":"cylinder","params":{"S":{"dim":3,"vertices":[["0","0","1"],["0","0","-1"]]}}})"), 2),
      FormatError);
}

TEST_CASE("builtin URIs") {
  CHECK(parse_builtin_uri("builtin:dbody", 3) == builtin("dbody", 3));
  BuiltinParams params;
  params.L = canonicalize(std::vector<RPoint>{{-2, 0}, {2, 0}}, 2);
  params.S = segment({1, 3});
  CHECK(parse_builtin_uri("builtin:cylinder?L=-2,0;2,0&S=1,3", 2) == builtin("cylinder", 2, params));
  BuiltinParams ab;
  ab.a = make_rational(5, 3);
  CHECK(parse_builtin_uri("builtin:ab_reflect?a=5/3", 2) == builtin("ab_reflect", 2, ab));

  CHECK_THROWS_AS(parse_builtin_uri("dbody", 2), FormatError);
  CHECK_THROWS_AS(parse_builtin_uri("builtin:dbody?x=1", 2), FormatError);
  CHECK_THROWS_AS(parse_builtin_uri("builtin:cylinder?S=0,0", 2), FormatError);
  CHECK_THROWS_AS(parse_builtin_uri("builtin:cylinder?S=1", 2), FormatError);
  CHECK_THROWS_AS(parse_builtin_uri("builtin:cylinder?L=0,0;0,1&S=0,1", 2), FormatError);  // dim(L+S) < n
  CHECK_THROWS_AS(parse_builtin_uri("builtin:ab_reflect?a=2/4", 2), FormatError);
}

TEST_CASE("direction files") {
  const auto dirs = sample_directions(3, 10);
  const Json j = directions_to_json(dirs);
  CHECK(directions_from_json(parse_json(dump(j)), 3) == dirs);
  CHECK(directions_from_json(parse_json(R"([["1","0"],["0","-1/2"]])"), 2).size() == 2);
  CHECK_THROWS_AS(directions_from_json(parse_json(R"([["0","0"]])"), 2), FormatError);
  CHECK_THROWS_AS(directions_from_json(j, 2), FormatError);
  CHECK_THROWS_AS(directions_from_json(parse_json("[]"), 2), FormatError);
}

TEST_CASE("reports carry rational strings and approximation envelopes") {
  CheckResult c = CheckResult::fail("x", "detail", Witness{simplex(2), std::nullopt, RPoint{1, 2},
                                                           make_rational(1, 3), make_rational(1, 2), 99, 4});
  c.approx = true;
  c.tolerance = 1e-6;
  const Json j = check_to_json(c);
  CHECK(j["status"] == "fail");
  CHECK(j["witness"]["value"] == "1/3");
  CHECK(j["witness"]["seed"] == "99");
  CHECK(j["approx"]["tolerance"] == 1e-6);
  CHECK(body_from_json(j["witness"]["body"]) == simplex(2));

  CHECK(mode_to_json(EvalMode::exact()) == Json{{"kind", "exact"}});
  CHECK(mode_to_json(EvalMode::approx(4096, 1e-5))["approx"]["tolerance"] == 1e-5);
}
