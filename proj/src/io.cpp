#include "minkval/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "minkval/body_zoo.hpp"
#include "minkval/errors.hpp"

namespace minkval {
namespace {

std::string rational_text(const Json& j, std::string_view what) {
  if (!j.is_string()) throw FormatError(std::string(what) + ": rationals must be JSON strings");
  return j.get<std::string>();
}

Rational rational_from_json(const Json& j, std::string_view what) {
  return parse_rational(rational_text(j, what));
}

void require_object(const Json& j, std::string_view what) {
  if (!j.is_object()) throw FormatError(std::string(what) + ": expected a JSON object");
}

void allow_keys(const Json& j, std::initializer_list<std::string_view> keys, std::string_view what) {
  for (const auto& [k, v] : j.items()) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      throw FormatError(std::string(what) + ": unexpected key '" + k + "'");
  }
}

const Json& member(const Json& j, const char* key, std::string_view what) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

int dim_from_json(const Json& j) {
  if (!j.is_number_integer()) throw FormatError("body: dim must be an integer");
  const auto d = j.get<long long>();
  if (d < 1 || d > max_ambient_dim())
    throw FormatError("body: dim " + std::to_string(d) + " outside 1.." + std::to_string(max_ambient_dim()));
  return static_cast<int>(d);
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

Json rationals_json(std::span<const Rational> xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(to_string(x));
  return a;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

RPoint point_from_text(std::string_view text, int n) {
  const auto parts = split(text, ',');
  if (parts.size() != static_cast<std::size_t>(n))
    throw FormatError("builtin URI: point '" + std::string(text) + "' needs " + std::to_string(n) + " coordinates");
  RPoint p(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < parts.size(); ++i) p[i] = parse_rational(parts[i]);
  return p;
}

Polytope segment_from_vector_text(std::string_view text, int n) {
  const RPoint v = point_from_text(text, n);
  if (v.is_zero()) throw FormatError("builtin URI: S generator must be nonzero");
  return segment(v);
}

OperatorSpec make_builtin(const std::string& name, int n, const BuiltinParams& params) {
  try {
    return builtin(name, n, params);
  } catch (const InvalidArgument& e) {
    throw FormatError(e.what());
  } catch (const DimensionMismatch& e) {
    throw FormatError(e.what());
  }
}

}  // namespace

Json tool_json() { return Json{{"name", kToolName}, {"version", kToolVersion}}; }

Json point_to_json(const RPoint& p) { return rationals_json(p.coords()); }

RPoint point_from_json(const Json& j, int n) {
  if (!j.is_array()) throw FormatError("point: expected an array of rational strings");
  if (j.size() != static_cast<std::size_t>(n))
    throw FormatError("point: expected " + std::to_string(n) + " coordinates, got " + std::to_string(j.size()));
  RPoint p(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < j.size(); ++i) p[i] = rational_from_json(j[i], "point");
  return p;
}

Json body_to_json(const Polytope& p) {
  Json verts = Json::array();
  for (const auto& v : p.vertices()) verts.push_back(point_to_json(v));
  return Json{{"dim", p.ambient_dim()}, {"vertices", std::move(verts)}};
}

Polytope body_from_json(const Json& j) {
  require_object(j, "body");
  allow_keys(j, {"dim", "vertices", "approx"}, "body");
  const int n = dim_from_json(member(j, "dim", "body"));
  const Json& verts = member(j, "vertices", "body");
  if (!verts.is_array() || verts.empty()) throw FormatError("body: vertices must be a nonempty array");
  std::vector<RPoint> pts;
  pts.reserve(verts.size());
  for (const auto& v : verts) pts.push_back(point_from_json(v, n));
  return canonicalize(pts, n);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_body(const Polytope& p) { return dump(body_to_json(p)); }
Polytope parse_body(std::string_view text) { return body_from_json(parse_json(text)); }

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw FormatError("write failed for '" + path.string() + "'");
}

Polytope read_body_file(const std::filesystem::path& path) { return parse_body(read_text_file(path)); }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_string(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string body_hash(const Polytope& p) { return hash_string(fnv1a(dump_body(p))); }
std::string operator_hash(const OperatorSpec& op) { return hash_string(fnv1a(dump(operator_to_json(op)))); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(point_to_json(m.row(r)));
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw FormatError("matrix: expected a nonempty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const RPoint row = point_from_json(j[r], static_cast<int>(cols));
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = row[c];
  }
  return m;
}

Json operator_to_json(const OperatorSpec& op) {
  Json j;
  j["op"] = node_name(op.kind());
  if (!op.name().empty()) j["name"] = op.name();
  switch (op.kind()) {
    case NodeKind::Const:
      j["body"] = body_to_json(*op.body());
      break;
    case NodeKind::VolSegment:
    case NodeKind::DVolSegment:
      j["segment"] = body_to_json(*op.body());
      break;
    case NodeKind::Linear:
      j["matrix"] = matrix_to_json(op.matrix());
      break;
    case NodeKind::Scale:
      j["factor"] = to_string(op.factor());
      j["arg"] = operator_to_json(op.children().front());
      break;
    case NodeKind::Sum: {
      Json args = Json::array();
      for (const auto& c : op.children()) args.push_back(operator_to_json(c));
      j["args"] = std::move(args);
      break;
    }
    default:
      break;
  }
  return j;
}

OperatorSpec operator_from_json(const Json& j, int n) {
  require_object(j, "operator");
  const Json& tag = member(j, "op", "operator");
  if (!tag.is_string()) throw FormatError("operator: 'op' must be a string");
  const std::string kind = tag.get<std::string>();

  if (kind == "builtin") {
    allow_keys(j, {"op", "name", "params"}, "builtin operator");
    const Json& name = member(j, "name", "builtin operator");
    if (!name.is_string()) throw FormatError("builtin operator: name must be a string");
    BuiltinParams params;
    if (auto it = j.find("params"); it != j.end()) {
      require_object(*it, "builtin params");
      allow_keys(*it, {"L", "S", "a", "b"}, "builtin params");
      if (it->contains("L")) params.L = body_from_json((*it)["L"]);
      if (it->contains("S")) params.S = body_from_json((*it)["S"]);
      if (it->contains("a")) params.a = rational_from_json((*it)["a"], "builtin params");
      if (it->contains("b")) params.b = rational_from_json((*it)["b"], "builtin params");
    }
    return make_builtin(name.get<std::string>(), n, params);
  }

  NodeKind k;
  try {
    k = node_kind_from_name(kind);
  } catch (const InvalidArgument&) {
    throw FormatError("operator: unknown node '" + kind + "'");
  }
  auto wrap = [&](auto&& build) -> OperatorSpec {
    try {
      return build();
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("operator: ") + e.what());
    } catch (const DimensionMismatch& e) {
      throw FormatError(std::string("operator: ") + e.what());
    }
  };
  OperatorSpec op = OperatorSpec::identity();
  switch (k) {
    case NodeKind::Identity:
      allow_keys(j, {"op", "name"}, "operator");
      break;
    case NodeKind::Reflect:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::reflect();
      break;
    case NodeKind::DBody:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::dbody();
      break;
    case NodeKind::CenterSteiner:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::center_steiner();
      break;
    case NodeKind::ReflectCenterSteiner:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::reflect_center_steiner();
      break;
    case NodeKind::SteinerPoint:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::steiner_point();
      break;
    case NodeKind::HullSymSteiner:
      allow_keys(j, {"op", "name"}, "operator");
      op = OperatorSpec::hull_sym_steiner();
      break;
    case NodeKind::Const: {
      allow_keys(j, {"op", "name", "body"}, "operator");
      Polytope b = body_from_json(member(j, "body", "const operator"));
      op = wrap([&] { return OperatorSpec::constant(std::move(b)); });
      break;
    }
    case NodeKind::VolSegment:
    case NodeKind::DVolSegment: {
      allow_keys(j, {"op", "name", "segment"}, "operator");
      Polytope s = body_from_json(member(j, "segment", "segment operator"));
      op = wrap([&] {
        return k == NodeKind::VolSegment ? OperatorSpec::vol_segment(std::move(s))
                                         : OperatorSpec::dvol_segment(std::move(s));
      });
      break;
    }
    case NodeKind::Linear: {
      allow_keys(j, {"op", "name", "matrix"}, "operator");
      Matrix m = matrix_from_json(member(j, "matrix", "linear operator"));
      op = wrap([&] { return OperatorSpec::linear(std::move(m)); });
      break;
    }
    case NodeKind::Scale: {
      allow_keys(j, {"op", "name", "factor", "arg"}, "operator");
      const Rational f = rational_from_json(member(j, "factor", "scale operator"), "scale operator");
      OperatorSpec child = operator_from_json(member(j, "arg", "scale operator"), n);
      op = wrap([&] { return OperatorSpec::scaled(f, std::move(child)); });
      break;
    }
    case NodeKind::Sum: {
      allow_keys(j, {"op", "name", "args"}, "operator");
      const Json& args = member(j, "args", "sum operator");
      if (!args.is_array()) throw FormatError("sum operator: args must be an array");
      std::vector<OperatorSpec> children;
      for (const auto& a : args) children.push_back(operator_from_json(a, n));
      op = wrap([&] { return OperatorSpec::sum(std::move(children)); });
      break;
    }
  }
  if (auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw FormatError("operator: name must be a string");
    op.with_name(it->get<std::string>());
  }
  return op;
}

OperatorSpec parse_builtin_uri(std::string_view uri, int n) {
  constexpr std::string_view prefix = "builtin:";
  if (!uri.starts_with(prefix)) throw FormatError("operator URI must start with 'builtin:'");
  uri.remove_prefix(prefix.size());
  const auto q = uri.find('?');
  const std::string name(uri.substr(0, q));
  BuiltinParams params;
  if (q != std::string_view::npos) {
    for (auto kv : split(uri.substr(q + 1), '&')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw FormatError("builtin URI: parameter without '='");
      const auto key = kv.substr(0, eq);
      const auto value = kv.substr(eq + 1);
      if (key == "L") {
        std::vector<RPoint> pts;
        for (auto p : split(value, ';')) pts.push_back(point_from_text(p, n));
        params.L = canonicalize(pts, n);
      } else if (key == "S") {
        params.S = segment_from_vector_text(value, n);
      } else if (key == "a") {
        params.a = parse_rational(value);
      } else if (key == "b") {
        params.b = parse_rational(value);
      } else {
        throw FormatError("builtin URI: unknown parameter '" + std::string(key) + "'");
      }
    }
  }
  return make_builtin(name, n, params);
}

OperatorSpec load_operator(const std::string& ref, int n) {
  if (ref.starts_with("builtin:")) return parse_builtin_uri(ref, n);
  return operator_from_json(parse_json(read_text_file(ref)), n);
}

std::vector<RPoint> directions_from_json(const Json& j, int n) {
  const Json* list = &j;
  if (j.is_object()) {
    allow_keys(j, {"dim", "directions"}, "directions");
    if (dim_from_json(member(j, "dim", "directions")) != n)
      throw FormatError("directions: dim differs from the body dimension");
    list = &member(j, "directions", "directions");
  }
  if (!list->is_array() || list->empty()) throw FormatError("directions: expected a nonempty array");
  std::vector<RPoint> out;
  for (const auto& d : *list) {
    RPoint u = point_from_json(d, n);
    if (u.is_zero()) throw FormatError("directions: zero vector");
    out.push_back(std::move(u));
  }
  return out;
}

Json directions_to_json(std::span<const RPoint> dirs) {
  Json a = Json::array();
  for (const auto& d : dirs) a.push_back(point_to_json(d));
  return Json{{"dim", dirs.empty() ? 0 : static_cast<int>(dirs[0].dim())}, {"directions", std::move(a)}};
}

Json mode_to_json(const EvalMode& mode) {
  if (mode.is_exact()) return Json{{"kind", "exact"}};
  return Json{{"kind", "approx"}, {"nodes", mode.nodes}, {"approx", {{"tolerance", mode.tolerance}}}};
}

Json witness_to_json(const Witness& w) {
  Json j;
  if (w.body) j["body"] = body_to_json(*w.body);
  if (w.other) j["other"] = body_to_json(*w.other);
  if (w.vector) j["vector"] = point_to_json(*w.vector);
  if (w.value) j["value"] = to_string(*w.value);
  if (w.expected) j["expected"] = to_string(*w.expected);
  j["seed"] = std::to_string(w.seed);
  j["trial"] = w.trial;
  return j;
}

Json check_to_json(const CheckResult& c) {
  Json j{{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}};
  if (c.witness) j["witness"] = witness_to_json(*c.witness);
  if (c.approx) j["approx"] = {{"tolerance", c.tolerance}};
  return j;
}

Json record_json(const OperatorSpec& op, const Polytope& k, std::span<const McMullenRecord> records,
                 const EvalMode& mode) {
  Json recs = Json::array();
  for (const auto& r : records) {
    recs.push_back(Json{{"direction", point_to_json(r.direction)},
                        {"components", rationals_json(r.components)},
                        {"validated", r.validated},
                        {"residual", to_string(r.residual)}});
  }
  Json j{{"tool", tool_json()},
         {"inputs", {{"operator", operator_hash(op)}, {"body", body_hash(k)}}},
         {"operator", operator_to_json(op)},
         {"body", body_to_json(k)},
         {"mode", mode_to_json(mode)},
         {"records", std::move(recs)}};
  if (!mode.is_exact()) j["approx"] = {{"tolerance", mode.tolerance}};
  return j;
}

Json volume_poly_json(const VolumePolyRecord& r, const EvalMode& mode) {
  Json j{{"tool", tool_json()},
         {"inputs", {{"operator", operator_hash(r.op)}, {"body", body_hash(r.body)}}},
         {"operator", operator_to_json(r.op)},
         {"body", body_to_json(r.body)},
         {"mode", mode_to_json(mode)},
         {"coefficients", rationals_json(r.coeffs)},
         {"validated", r.validated},
         {"degree_raised", r.degree_raised},
         {"residual", to_string(r.residual)}};
  if (!mode.is_exact()) j["approx"] = {{"tolerance", mode.tolerance}};
  return j;
}

Json audit_report_json(const AuditReport& r) {
  const auto& cs = r.config.corpus;
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  Json j{{"tool", tool_json()},
         {"inputs", {{"operator", operator_hash(r.op)}}},
         {"operator", operator_to_json(r.op)},
         {"corpus", {{"dim", cs.dim}, {"count", cs.count}, {"seed", std::to_string(cs.seed)}}},
         {"trials", r.config.trials},
         {"seed", std::to_string(r.config.seed)},
         {"scale_steps", r.config.scale_steps},
         {"mode", mode_to_json(r.mode)},
         {"checks", std::move(checks)}};
  if (r.vc) {
    j["vc"] = {{"ratio_min", to_string(r.vc->min)},
               {"ratio_max", to_string(r.vc->max)},
               {"ratios", rationals_json(r.vc->ratios)}};
  } else {
    j["vc"] = nullptr;
  }
  if (r.scale) {
    j["scale_probe"] = {{"lambdas", rationals_json(r.scale->lambdas)},
                        {"ratios", rationals_json(r.scale->ratios)},
                        {"trend", trend_name(r.scale->trend)},
                        {"growth_exponent", decimal(r.scale->exponent)}};
  } else {
    j["scale_probe"] = nullptr;
  }
  j["dichotomy_dim"] = r.dichotomy_dim ? Json(*r.dichotomy_dim) : Json(nullptr);
  j["branch"] = branch_name(r.branch);
  j["model_violation"] = r.model_violation.empty() ? Json(nullptr) : Json(r.model_violation);
  j["exit_code"] = r.exit_code();
  if (!r.mode.is_exact()) j["approx"] = {{"tolerance", r.mode.tolerance}};
  return j;
}

std::string audit_ratio_csv(const AuditReport& r) {
  std::string out = "table,index,lambda,ratio,ratio_decimal\n";
  if (r.vc) {
    for (std::size_t i = 0; i < r.vc->ratios.size(); ++i)
      out += "vc," + std::to_string(i) + ",," + to_string(r.vc->ratios[i]) + "," + to_decimal(r.vc->ratios[i]) + "\n";
  }
  if (r.scale) {
    for (std::size_t i = 0; i < r.scale->ratios.size(); ++i)
      out += "scale," + std::to_string(i) + "," + to_string(r.scale->lambdas[i]) + "," +
             to_string(r.scale->ratios[i]) + "," + to_decimal(r.scale->ratios[i]) + "\n";
  }
  return out;
}

}  // namespace minkval
