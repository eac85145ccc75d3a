#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "minkval/audit.hpp"
#include "minkval/mcmullen.hpp"
#include "minkval/operators.hpp"
#include "minkval/polytope.hpp"
#include "minkval/report.hpp"

// Stable file formats. Every exact quantity is written as a "p/q" string;
// doubles appear only inside an "approx": {"tolerance": eps} envelope.
// Malformed input raises FormatError.

namespace minkval {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolName = "minkval";
inline constexpr std::string_view kToolVersion = "1.0.0";

Json tool_json();

Json point_to_json(const RPoint& p);
RPoint point_from_json(const Json& j, int n);

/// {"dim": n, "vertices": [["p/q", ...], ...]}, vertices in canonical order.
Json body_to_json(const Polytope& p);
/// Accepts any finite point list and canonicalizes it. Rejects unreduced or
/// zero-denominator rationals, non-string coordinates, unknown keys and
/// dimensions outside 1..max_ambient_dim().
Polytope body_from_json(const Json& j);

/// Two-space indented text with a trailing newline; parse/dump round-trips
/// byte for byte on canonical input.
std::string dump(const Json& j);
Json parse_json(std::string_view text);

std::string dump_body(const Polytope& p);
Polytope parse_body(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);
Polytope read_body_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, rendered as "fnv1a:<16 hex digits>".
std::uint64_t fnv1a(std::string_view bytes);
std::string hash_string(std::uint64_t h);
std::string body_hash(const Polytope& p);
std::string operator_hash(const OperatorSpec& op);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// Node trees: {"op": "sum", "args": [...]}, {"op": "scale", "factor": "p/q",
/// "arg": ...}, {"op": "const", "body": ...}, {"op": "linear", "matrix": ...},
/// {"op": "vol_segment" | "dvol_segment", "segment": ...} and the payload-free
/// nodes. Catalog names are written as an extra "name" key on the root.
Json operator_to_json(const OperatorSpec& op);
/// Also accepts {"op": "builtin", "name": ..., "params": {"L", "S", "a", "b"}};
/// builtins are instantiated in R^n.
OperatorSpec operator_from_json(const Json& j, int n);

/// builtin:NAME?L=x,y;x,y&S=x,y&a=p/q&b=p/q. L lists vertices separated by
/// ';', S is the generator v of S_v.
OperatorSpec parse_builtin_uri(std::string_view uri, int n);

/// "builtin:..." URI or path to an operator JSON file.
OperatorSpec load_operator(const std::string& ref, int n);

/// {"dim": n, "directions": [[...], ...]} or a bare array of vectors.
std::vector<RPoint> directions_from_json(const Json& j, int n);
Json directions_to_json(std::span<const RPoint> dirs);

Json mode_to_json(const EvalMode& mode);
Json witness_to_json(const Witness& w);
Json check_to_json(const CheckResult& c);

Json record_json(const OperatorSpec& op, const Polytope& k, std::span<const McMullenRecord> records,
                 const EvalMode& mode);
Json volume_poly_json(const VolumePolyRecord& r, const EvalMode& mode);
Json audit_report_json(const AuditReport& r);
/// table,index,lambda,ratio rows for the VC ratios and the scale probe.
std::string audit_ratio_csv(const AuditReport& r);

}  // namespace minkval
