#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ndproof/checker.hpp"
#include "ndproof/proofdoc.hpp"
#include "ndproof/semantics.hpp"

namespace ndproof {

using Json = nlohmann::ordered_json;

/// Wire format version carried by every top-level body.
inline constexpr std::string_view kSchemaVersion = "v1";

// All *_from_json functions throw ParseError with code E_JSON on a shape
// error (missing or unknown field, wrong type, version mismatch).

Json term_to_json(const Term& t);
Term term_from_json(const Json& j);

/// {"kind": "pred" | "not" | "and" | "or" | "imp" | "iff" | "forall" |
/// "exists" | "top" | "bottom", ...}
Json formula_to_json(const Formula& f);
Formula formula_from_json(const Json& j);

/// Formulas travel as canonical text; premises are lines of kind "premise".
Json document_to_json(const ProofDocument& doc);
ProofDocument document_from_json(const Json& j);

Json diagnostic_to_json(const Diagnostic& d);
Json report_to_json(const CheckReport& r);
/// The exact bytes emitted by both `ndp check --json` and POST /v1/check.
std::string report_json_text(const CheckReport& r);

Json structure_to_json(const Structure& s);
Structure structure_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);

Json parse_error_to_json(const ParseError& e);

/// Parses JSON text, mapping syntax errors to ParseError(E_JSON).
Json parse_json(std::string_view text);

}  // namespace ndproof
