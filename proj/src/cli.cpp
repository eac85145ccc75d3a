#include "minkval/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <optional>

#include "minkval/audit.hpp"
#include "minkval/body_zoo.hpp"
#include "minkval/directions.hpp"
#include "minkval/errors.hpp"
#include "minkval/io.hpp"
#include "minkval/mcmullen.hpp"
#include "minkval/mixed_volume.hpp"
#include "minkval/operators.hpp"

namespace minkval::cli {
namespace {

namespace fs = std::filesystem;

/// Raised for semantically bad flag values that CLI11 cannot see.
struct UsageError : Error {
  using Error::Error;
};

struct ModeFlags {
  std::optional<std::size_t> nodes;
  std::optional<double> tolerance;

  void add(CLI::App* sub) {
    sub->add_option("--nodes", nodes, "Quadrature nodes for Steiner evaluation (forces approximate mode)");
    sub->add_option("--tolerance", tolerance, "Comparison tolerance (forces approximate mode)");
  }
  EvalMode resolve(const OperatorSpec& op) const {
    if (!nodes && !tolerance) return default_mode(op);
    try {
      return EvalMode::approx(nodes.value_or(2048), tolerance.value_or(1e-6));
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
};

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) throw UsageError(what + ": expected an unsigned integer, got '" + s + "'");
  return v;
}

/// dim=2,count=100,seed=42
CorpusSpec parse_corpus(const std::string& text) {
  CorpusSpec spec{2, 100, 42};
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string kv = text.substr(start, comma - start);
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--corpus: expected key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
    if (key == "dim") {
      spec.dim = static_cast<int>(std::min<std::uint64_t>(parse_u64(value, "--corpus dim"), 1000));
    } else if (key == "count") {
      spec.count = static_cast<int>(std::min<std::uint64_t>(parse_u64(value, "--corpus count"), 1u << 30));
    } else if (key == "seed") {
      spec.seed = parse_u64(value, "--corpus seed");
    } else {
      throw UsageError("--corpus: unknown key '" + key + "'");
    }
    start = comma + 1;
  }
  try {
    spec.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--corpus: ") + e.what());
  }
  return spec;
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
  } else {
    write_text_file(out_path, text);
  }
}

Json with_approx(Json j, const EvalMode& mode) {
  if (!mode.is_exact()) j["approx"] = {{"tolerance", mode.tolerance}};
  return j;
}

struct Commands {
  explicit Commands(std::ostream& o) : out(o) {}
  std::ostream& out;

  // Shared option storage; each invocation runs a single subcommand.
  std::string body_path, op_ref, out_path, dirs_path, corpus_text = "dim=2,count=100,seed=42";
  std::string out_dir, format = "json";
  std::vector<std::string> body_paths;
  int gen_dim = 2, gen_count = 1, trials = 100, scale_steps = 6;
  std::uint64_t seed = 42, gen_seed = 0;
  bool check_positivity = false;
  ModeFlags mode_flags;

  int gen() {
    CorpusSpec spec{gen_dim, gen_count, gen_seed};
    try {
      spec.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    fs::create_directories(out_dir);
    Json bodies = Json::array();
    for (int i = 0; i < spec.count; ++i) {
      const Polytope p = random_polytope(spec, static_cast<std::size_t>(i));
      char name[32];
      std::snprintf(name, sizeof name, "body_%03d.json", i);
      write_text_file(fs::path(out_dir) / name, dump_body(p));
      bodies.push_back(Json{{"file", name}, {"hash", body_hash(p)}});
    }
    Json manifest{{"tool", tool_json()},
                  {"corpus", {{"dim", spec.dim}, {"count", spec.count}, {"seed", std::to_string(spec.seed)}}},
                  {"bodies", std::move(bodies)}};
    write_text_file(fs::path(out_dir) / "manifest.json", dump(manifest));
    out << "wrote " << spec.count << " bodies to " << out_dir << "\n";
    return kExitOk;
  }

  int volume_cmd() {
    const Polytope p = read_body_file(body_path);
    const Rational v = volume(p);
    out << to_string(v) << " ~ " << to_decimal(v) << "\n";
    return kExitOk;
  }

  int mixedvol() {
    MixedVolumeQuery q;
    for (const auto& path : body_paths) q.bodies.push_back(read_body_file(path));
    try {
      q.validate();
    } catch (const DimensionMismatch& e) {
      throw UsageError(std::string(e.what()) + " (pass exactly n bodies of R^n)");
    }
    const Rational v = mixed_volume(q);
    out << to_string(v) << " ~ " << to_decimal(v) << "\n";
    if (!check_positivity) return kExitOk;
    const bool criterion = positivity_criterion(q);
    const bool positive = sgn(v) > 0;
    out << "dimension_criterion " << (criterion ? "true" : "false") << "\n";
    out << "mixed_volume_positive " << (positive ? "true" : "false") << "\n";
    out << "equivalence " << (criterion == positive ? "holds" : "FAILS") << "\n";
    return criterion == positive ? kExitOk : kExitCheckFailed;
  }

  int dbody_cmd() {
    emit(dump_body(dbody(read_body_file(body_path))), out_path, out);
    return kExitOk;
  }

  int rs_check_cmd() {
    const Polytope p = read_body_file(body_path);
    const RsReport r = rs_check(p);
    Json j{{"ratio", to_string(r.ratio)},
           {"upper_tight", r.upper_tight},
           {"lower_tight", r.lower_tight},
           {"within_bounds", r.within_bounds},
           {"inputs", {{"body", body_hash(p)}}},
           {"tool", tool_json()}};
    emit(dump(j), out_path, out);
    return r.within_bounds ? kExitOk : kExitCheckFailed;
  }

  int apply_cmd() {
    const Polytope k = read_body_file(body_path);
    const OperatorSpec op = load_operator(op_ref, k.ambient_dim());
    const EvalMode mode = mode_flags.resolve(op);
    emit(dump(with_approx(body_to_json(apply(op, k, mode)), mode)), out_path, out);
    return kExitOk;
  }

  int decompose_cmd() {
    const Polytope k = read_body_file(body_path);
    const OperatorSpec op = load_operator(op_ref, k.ambient_dim());
    const EvalMode mode = mode_flags.resolve(op);
    const auto dirs = dirs_path.empty() ? sample_directions(k.ambient_dim(), 16)
                                        : directions_from_json(parse_json(read_text_file(dirs_path)), k.ambient_dim());
    const auto records = decompose(op, k, dirs, mode);
    emit(dump(record_json(op, k, records, mode)), out_path, out);
    return kExitOk;
  }

  int volpoly_cmd() {
    const Polytope k = read_body_file(body_path);
    const OperatorSpec op = load_operator(op_ref, k.ambient_dim());
    const EvalMode mode = mode_flags.resolve(op);
    emit(dump(volume_poly_json(volume_poly(op, k, mode), mode)), out_path, out);
    return kExitOk;
  }

  AuditConfig audit_config(const OperatorSpec& op) {
    AuditConfig c;
    c.corpus = parse_corpus(corpus_text);
    if (trials < 1) throw UsageError("--trials must be >= 1");
    if (scale_steps < 1 || scale_steps > 20) throw UsageError("--scale-steps must be in 1..20");
    c.trials = trials;
    c.seed = seed;
    c.scale_steps = scale_steps;
    if (mode_flags.nodes || mode_flags.tolerance) c.mode = mode_flags.resolve(op);
    return c;
  }

  int report_cmd(bool full) {
    const CorpusSpec corpus = parse_corpus(corpus_text);
    const OperatorSpec op = load_operator(op_ref, corpus.dim);
    const AuditReport r = full ? audit(op, audit_config(op)) : classify(op, audit_config(op));
    if (format == "csv") {
      emit(audit_ratio_csv(r), out_path, out);
    } else {
      emit(dump(audit_report_json(r)), out_path, out);
    }
    if (!out_path.empty()) {
      for (const auto& c : r.checks) out << c.name << " " << status_name(c.status) << "\n";
      out << "branch " << branch_name(r.branch) << "\n";
    }
    if (!r.model_violation.empty()) return kExitModelViolation;
    if (!full) return kExitOk;
    return r.exit_code();
  }

  int valuation_cmd() {
    const CorpusSpec corpus = parse_corpus(corpus_text);
    const OperatorSpec op = load_operator(op_ref, corpus.dim);
    const AuditConfig c = audit_config(op);
    const EvalMode mode = c.mode.value_or(default_mode(op));
    if (op.fixed_dim() && *op.fixed_dim() != corpus.dim)
      throw DimensionMismatch("operator payloads live in R^" + std::to_string(*op.fixed_dim()));
    const auto bodies = make_corpus(corpus);
    const CheckResult res = valuation_check(op, bodies, c.trials, c.seed, mode);
    Json j{{"tool", tool_json()},
           {"inputs", {{"operator", operator_hash(op)}}},
           {"operator", operator_to_json(op)},
           {"corpus", {{"dim", corpus.dim}, {"count", corpus.count}, {"seed", std::to_string(corpus.seed)}}},
           {"trials", c.trials},
           {"seed", std::to_string(c.seed)},
           {"mode", mode_to_json(mode)},
           {"check", check_to_json(res)}};
    emit(dump(with_approx(std::move(j), mode)), out_path, out);
    return res.failed() ? kExitCheckFailed : kExitOk;
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact polytope toolkit for Minkowski valuations", "minkval"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  Commands c(out);
  int code = kExitOk;

  auto body_arg = [&](CLI::App* s) { s->add_option("body", c.body_path, "Body JSON file")->required(); };
  auto op_arg = [&](CLI::App* s) {
    s->add_option("operator", c.op_ref, "Operator JSON file or builtin:NAME?params URI")->required();
  };
  auto out_opt = [&](CLI::App* s) { s->add_option("--out", c.out_path, "Write the result here instead of stdout"); };
  auto corpus_opts = [&](CLI::App* s) {
    s->add_option("--corpus", c.corpus_text, "Corpus as dim=N,count=N,seed=N")->capture_default_str();
    s->add_option("--trials", c.trials, "Random trials per check")->capture_default_str();
    s->add_option("--seed", c.seed, "Trial seed")->capture_default_str();
  };

  auto* gen = app.add_subcommand("gen", "Write a seeded random corpus");
  gen->add_option("--dim", c.gen_dim, "Ambient dimension")->required();
  gen->add_option("--count", c.gen_count, "Number of bodies")->required();
  gen->add_option("--seed", c.gen_seed, "Corpus seed")->capture_default_str();
  gen->add_option("--out", c.out_dir, "Output directory")->required();
  gen->callback([&] { code = c.gen(); });

  auto* vol = app.add_subcommand("volume", "Exact volume of a body");
  body_arg(vol);
  vol->callback([&] { code = c.volume_cmd(); });

  auto* mv = app.add_subcommand("mixedvol", "Mixed volume V(K_1, ..., K_n)");
  mv->add_option("bodies", c.body_paths, "n body JSON files")->required();
  mv->add_flag("--check-positivity", c.check_positivity, "Compare the sign with the dimension criterion");
  mv->callback([&] { code = c.mixedvol(); });

  auto* db = app.add_subcommand("dbody", "Difference body K + (-K)");
  body_arg(db);
  out_opt(db);
  db->callback([&] { code = c.dbody_cmd(); });

  auto* rs = app.add_subcommand("rs-check", "Rogers-Shephard ratio V(DK)/V(K)");
  body_arg(rs);
  out_opt(rs);
  rs->callback([&] { code = c.rs_check_cmd(); });

  auto* ap = app.add_subcommand("apply", "Evaluate an operator on a body");
  op_arg(ap);
  body_arg(ap);
  out_opt(ap);
  c.mode_flags.add(ap);
  ap->callback([&] { code = c.apply_cmd(); });

  auto* dc = app.add_subcommand("decompose", "Homogeneous components of h(Phi(lambda K), u)");
  op_arg(dc);
  body_arg(dc);
  dc->add_option("--dirs", c.dirs_path, "Direction JSON file");
  out_opt(dc);
  c.mode_flags.add(dc);
  dc->callback([&] { code = c.decompose_cmd(); });

  auto* vp = app.add_subcommand("volpoly", "Coefficients of lambda -> V(Phi(lambda K))");
  op_arg(vp);
  body_arg(vp);
  out_opt(vp);
  c.mode_flags.add(vp);
  vp->callback([&] { code = c.volpoly_cmd(); });

  auto* au = app.add_subcommand("audit", "Property audit over a seeded corpus");
  op_arg(au);
  corpus_opts(au);
  au->add_option("--scale-steps", c.scale_steps, "Scale probe uses lambda = 1, 2, ..., 2^steps")->capture_default_str();
  au->add_option("--format", c.format, "json or csv (ratio tables)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  out_opt(au);
  c.mode_flags.add(au);
  au->callback([&] { code = c.report_cmd(true); });

  auto* vc = app.add_subcommand("valuation-check", "Inclusion-exclusion on random slice pairs");
  op_arg(vc);
  corpus_opts(vc);
  out_opt(vc);
  c.mode_flags.add(vc);
  vc->callback([&] { code = c.valuation_cmd(); });

  auto* cl = app.add_subcommand("classify", "Decide the classification branch");
  op_arg(cl);
  corpus_opts(cl);
  cl->add_option("--scale-steps", c.scale_steps, "Scale probe uses lambda = 1, 2, ..., 2^steps")->capture_default_str();
  cl->add_option("--format", c.format, "json or csv (ratio tables)")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  out_opt(cl);
  c.mode_flags.add(cl);
  cl->callback([&] { code = c.report_cmd(false); });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ExactModeViolation& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ModelViolation& e) {
    err << "model violation: " << e.what() << "\n";
    return kExitModelViolation;
  } catch (const Error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitDataFormat;
  } catch (const fs::filesystem_error& e) {
    err << "data error: " << e.what() << "\n";
    return kExitDataFormat;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return code;
}

}  // namespace minkval::cli
