#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ndproof/proofdoc.hpp"

namespace ndproof {

// ---------- Diagnostics ----------

/// Published, versioned set of verdict codes. The string spellings returned
/// by diag_code_name are part of the v1 wire contract.
enum class DiagCode {
  Scope,            // E_SCOPE: citation not accessible from the citing line
  BadCitation,      // E_BAD_CITATION: missing, forward, self, wrong kind or count
  RuleMismatch,     // E_RULE_MISMATCH: formulas do not fit the rule schema
  Freshness,        // E_FRESHNESS: ∀I / ∃E constant condition violated
  NotFreeFor,       // E_NOT_FREE_FOR: instantiation term would be captured
  DerivedInStrict,  // E_DERIVED_IN_STRICT: QN / NegImp / IP under strict mode
  UnknownRule,      // E_UNKNOWN_RULE
  GoalMismatch,     // E_GOAL_MISMATCH: last line differs from declared goal
  RuleRelabeled,    // W_RULE_RELABELED: NotI concluding a positive, read as IP
};

std::string_view diag_code_name(DiagCode c);
std::optional<DiagCode> parse_diag_code(std::string_view s);
const std::vector<DiagCode>& all_diag_codes();

enum class Severity { Error, Warning };

struct Diagnostic {
  int line = 0;
  DiagCode code = DiagCode::RuleMismatch;
  Severity severity = Severity::Error;
  std::string message;
  std::vector<int> related;

  bool is_error() const { return severity == Severity::Error; }
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// ---------- Checking ----------

struct CheckConfig {
  /// Reject the derived rules QN, NegImp and IP.
  bool strict = false;
  /// Compare formulas up to renaming of bound variables.
  bool alpha_matching = true;
};

struct CheckReport {
  std::vector<Diagnostic> diagnostics;
  bool accepted = false;
  /// Formula of the last line, when accepted.
  std::optional<Formula> proved;

  bool has(DiagCode c) const;
  std::set<DiagCode> error_codes() const;
};

/// Validates every derived line and the document-level freshness and goal
/// conditions. Diagnostics come back ordered by line.
CheckReport check_proof(const ProofDocument& doc, const CheckConfig& cfg = {});

/// Diagnostics for a single derived line. Depends only on lines up to and
/// including `line`.
std::vector<Diagnostic> check_line(const ProofDocument& doc, int line, const CheckConfig& cfg = {});

/// Symbols absent from the premises and from lines 1..upto.
class FreshConstants {
 public:
  explicit FreshConstants(std::set<std::string> used) : used_(std::move(used)) {}

  bool contains(std::string_view name) const {
    return is_identifier(name) && !is_variable_name(name) && used_.count(std::string(name)) == 0;
  }
  const std::set<std::string>& used() const { return used_; }
  /// First fresh name of the form hint, hint1, hint2, ...
  std::string next(std::string_view hint = "c") const;

 private:
  std::set<std::string> used_;
};

FreshConstants fresh_constants(const ProofDocument& doc, int upto);

}  // namespace ndproof
