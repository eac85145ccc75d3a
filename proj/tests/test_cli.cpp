#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "minkval/body_zoo.hpp"
#include "minkval/cli.hpp"
#include "minkval/directions.hpp"
#include "minkval/io.hpp"
#include "minkval/operators.hpp"
#include "minkval/polytope.hpp"

using namespace minkval;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = minkval::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("minkval_cli_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    write_text_file(path / name, text);
    return (path / name).string();
  }
  std::string put(const std::string& name, const Polytope& p) const { return file(name, dump_body(p)); }
};

Polytope centered_square() {
  return canonicalize(std::vector<RPoint>{{make_rational(-1, 2), make_rational(-1, 2)},
                                          {make_rational(1, 2), make_rational(-1, 2)},
                                          {make_rational(-1, 2), make_rational(1, 2)},
                                          {make_rational(1, 2), make_rational(1, 2)}},
                      2);
}

}  // namespace

TEST_CASE("rs-check reports the simplex ratio") {
  TempDir d("rs");
  const Run r = invoke({"rs-check", d.put("simplex2.json", simplex(2))});
  CHECK(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j["ratio"] == "6/1");
  CHECK(j["upper_tight"] == true);
  CHECK(j["inputs"]["body"] == body_hash(simplex(2)));
  CHECK(j["tool"]["version"] == std::string(kToolVersion));

  const Run c = invoke({"rs-check", d.put("cube3.json", cube_from_segments(std::vector<SegmentSpec>{
                                                        SegmentSpec(RPoint{1, 0, 0}), SegmentSpec(RPoint{0, 1, 0}),
                                                        SegmentSpec(RPoint{0, 0, 1})}))});
  CHECK(parse_json(c.out)["ratio"] == "8/1");
  CHECK(parse_json(c.out)["lower_tight"] == true);
}

TEST_CASE("dbody of a centred square is the doubled square") {
  TempDir d("dbody");
  const Run r = invoke({"dbody", d.put("square.json", centered_square())});
  CHECK(r.code == 0);
  CHECK(parse_body(r.out) == scale(centered_square(), 2));
  CHECK(r.out == dump_body(scale(centered_square(), 2)));
}

TEST_CASE("volume and mixed volume") {
  TempDir d("mv");
  const Run v = invoke({"volume", d.put("s3.json", simplex(3))});
  CHECK(v.code == 0);
  CHECK(v.out.starts_with("1/6 ~ 0.1666"));

  const auto q = d.put("q.json", unit_cube(2));
  const auto s = d.put("s.json", segment({1, 0}));
  const auto t = d.put("t.json", segment({2, 0}));
  const Run m = invoke({"mixedvol", q, s, "--check-positivity"});
  CHECK(m.code == 0);
  CHECK(m.out.starts_with("1/1 ~ "));
  CHECK(m.out.find("equivalence holds") != std::string::npos);
  const Run z = invoke({"mixedvol", s, t, "--check-positivity"});
  CHECK(z.code == 0);
  CHECK(z.out.starts_with("0/1 ~ "));
  CHECK(z.out.find("dimension_criterion false") != std::string::npos);
  CHECK(invoke({"mixedvol", q}).code == cli::kExitUsage);
}

TEST_CASE("gen writes a deterministic corpus") {
  TempDir a("gen_a"), b("gen_b");
  CHECK(invoke({"gen", "--dim", "2", "--count", "12", "--seed", "42", "--out", a.path.string()}).code == 0);
  CHECK(invoke({"gen", "--dim", "2", "--count", "12", "--seed", "42", "--out", b.path.string()}).code == 0);
  const auto corpus = make_corpus({2, 12, 42});
  for (int i = 0; i < 12; ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "body_%03d.json", i);
    const std::string ta = read_text_file(a.path / name);
    CHECK(ta == read_text_file(b.path / name));
    CHECK(parse_body(ta) == corpus[static_cast<std::size_t>(i)]);
  }
  CHECK(!fs::exists(a.path / "body_012.json"));
  const Json manifest = parse_json(read_text_file(a.path / "manifest.json"));
  CHECK(manifest["bodies"].size() == 12);
  CHECK(manifest["bodies"][3]["hash"] == body_hash(corpus[3]));
  CHECK(invoke({"gen", "--dim", "7", "--count", "1", "--out", a.path.string()}).code == cli::kExitUsage);
}

TEST_CASE("apply, decompose and volpoly") {
  TempDir d("ops");
  const auto k = d.put("k.json", unit_cube(2));
  const Run ap = invoke({"apply", "builtin:dbody", k});
  CHECK(ap.code == 0);
  CHECK(parse_body(ap.out) == dbody(unit_cube(2)));

  const auto dirs = d.file("dirs.json", dump(directions_to_json(sample_directions(2, 6))));
  const auto rec_path = (d.path / "record.json").string();
  const Run dc = invoke({"decompose", "builtin:dbody", k, "--dirs", dirs, "--out", rec_path});
  CHECK(dc.code == 0);
  const Json rec = parse_json(read_text_file(rec_path));
  CHECK(rec["inputs"]["body"] == body_hash(unit_cube(2)));
  CHECK(rec["inputs"]["operator"] == operator_hash(builtin("dbody", 2)));
  REQUIRE(rec["records"].size() == 6);
  for (const auto& r : rec["records"]) {
    const RPoint u = point_from_json(r["direction"], 2);
    CHECK(r["components"][0] == "0/1");
    CHECK(parse_rational(r["components"][1].get<std::string>()) ==
          support(unit_cube(2), u) + support(unit_cube(2), -u));
    CHECK(r["components"][2] == "0/1");
    CHECK(r["residual"] == "0/1");
  }
  CHECK(!rec.contains("approx"));

  const Run vp = invoke({"volpoly", "builtin:cylinder", k});
  CHECK(vp.code == 0);
  const Json poly = parse_json(vp.out);
  const auto& coeffs = poly["coefficients"];
  for (std::size_t j = 0; j < coeffs.size(); ++j) CHECK(coeffs[j] == (j == 2 ? "4/1" : "0/1"));

  const Run st = invoke({"apply", "builtin:dbody_plus_steiner", d.put("t.json", simplex(2))});
  CHECK(st.code == 0);
  CHECK(parse_json(st.out)["approx"]["tolerance"] == 1e-6);
}

TEST_CASE("audit of cylinder_plus_dbody shows the upper-volume failure") {
  TempDir d("audit");
  const auto out = (d.path / "report.json").string();
  const Run r = invoke({"audit", "builtin:cylinder_plus_dbody", "--corpus", "dim=2,count=20,seed=42", "--trials", "40",
                     "--out", out});
  CHECK(r.code == cli::kExitCheckFailed);
  const Json rep = parse_json(read_text_file(out));
  CHECK(rep["branch"] == "not_VC");
  const auto& checks = rep["checks"];
  CHECK(checks[0]["name"] == "valuation");
  CHECK(checks[0]["status"] == "pass");
  CHECK(checks[2]["name"] == "lvc");
  CHECK(checks[2]["status"] == "pass");
  CHECK(checks[3]["name"] == "uvc");
  CHECK(checks[3]["status"] == "fail");
  CHECK(rep["scale_probe"]["trend"] == "increasing");
  const auto& ratios = rep["scale_probe"]["ratios"];
  const Rational growth = parse_rational(ratios.back().get<std::string>()) / parse_rational(ratios[0].get<std::string>());
  CHECK(growth > 10);

  const Run csv = invoke({"audit", "builtin:cylinder_plus_dbody", "--corpus", "dim=2,count=5,seed=1", "--trials", "10",
                       "--format", "csv"});
  CHECK(csv.code == cli::kExitCheckFailed);
  CHECK(csv.out.starts_with("table,index,lambda,ratio,ratio_decimal\nvc,0,,"));
  CHECK(csv.out.find("\nscale,6,64/1,") != std::string::npos);
}

TEST_CASE("audit output is identical across runs and thread counts") {
  const std::vector<std::string> args{"audit", "builtin:dbody", "--corpus", "dim=2,count=12,seed=5", "--trials", "20"};
  ::setenv("MINKVAL_THREADS", "1", 1);
  const Run one = invoke(args);
  ::setenv("MINKVAL_THREADS", "4", 1);
  const Run four = invoke(args);
  const Run again = invoke(args);
  ::unsetenv("MINKVAL_THREADS");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(four.out == again.out);
}

TEST_CASE("valuation-check witnesses replay") {
  const Run r = invoke({"valuation-check", "builtin:cylinder_dvol", "--corpus", "dim=2,count=20,seed=42", "--trials", "100"});
  CHECK(r.code == cli::kExitCheckFailed);
  const Json j = parse_json(r.out);
  const Json& w = j["check"]["witness"];
  const Polytope p = body_from_json(w["body"]);
  const std::uint64_t seed = std::stoull(w["seed"].get<std::string>());
  const SlicePair sp = random_slice_pair(p, seed);
  CHECK(body_from_json(w["other"]) == sp.middle);
  const OperatorSpec op = operator_from_json(j["operator"], 2);
  const Polytope lhs = minkowski_sum(apply(op, sp.upper), apply(op, sp.lower));
  const Polytope rhs = minkowski_sum(apply(op, p), apply(op, sp.middle));
  CHECK(lhs != rhs);
}

TEST_CASE("classify reports the branch") {
  const Run r = invoke({"classify", "builtin:cylinder", "--corpus", "dim=3,count=8,seed=2", "--trials", "10"});
  CHECK(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j["branch"] == "cylinder");
  CHECK(j["dichotomy_dim"] == 2);
}

TEST_CASE("exit codes for usage and data errors") {
  TempDir d("errors");
  const auto good = d.put("good.json", simplex(2));
  const auto bad = d.file("bad.json", R"({"dim":2,"vertices":[["2/4","0"]]})");
  const auto flat = d.put("flat.json", segment({1, 1}));
  const auto three = d.put("three.json", simplex(3));
  CHECK(invoke({}).code == cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kExitUsage);
  CHECK(invoke({"volume"}).code == cli::kExitUsage);
  CHECK(invoke({"volume", good, "--bogus"}).code == cli::kExitUsage);
  CHECK(invoke({"audit", "builtin:dbody", "--corpus", "dim=2,size=3"}).code == cli::kExitUsage);
  CHECK(invoke({"audit", "builtin:dbody", "--corpus", "dim=two"}).code == cli::kExitUsage);
  CHECK(invoke({"audit", "builtin:dbody", "--format", "xml"}).code == cli::kExitUsage);
  CHECK(invoke({"audit", "builtin:dbody", "--trials", "0"}).code == cli::kExitUsage);
  CHECK(invoke({"apply", "builtin:dbody", good, "--nodes", "3"}).code == cli::kExitUsage);
  CHECK(invoke({"volume", bad}).code == cli::kExitDataFormat);
  CHECK(invoke({"volume", (d.path / "missing.json").string()}).code == cli::kExitDataFormat);
  CHECK(invoke({"rs-check", flat}).code == cli::kExitDataFormat);
  CHECK(invoke({"apply", "builtin:nosuch", good}).code == cli::kExitDataFormat);
  CHECK(invoke({"apply", (d.path / "missing_op.json").string(), good}).code == cli::kExitDataFormat);
  const auto op2 = d.file("op2.json", dump(operator_to_json(builtin("cylinder", 2))));
  CHECK(invoke({"apply", op2, three}).code == cli::kExitDataFormat);
  CHECK(invoke({"audit", op2, "--corpus", "dim=3,count=2,seed=1"}).code == cli::kExitDataFormat);
  CHECK(invoke({"--version"}).code == 0);
  CHECK(invoke({"--help"}).code == 0);
}
