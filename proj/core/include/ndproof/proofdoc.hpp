#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ndproof/syntax.hpp"

namespace ndproof {

// ---------- Rules ----------

enum class Rule {
  NotI,
  NotE,
  AndI,
  AndE,
  OrI,
  OrE,
  ImpI,
  ImpE,
  IffI,
  IffE,
  ForallI,
  ForallE,
  ExistsI,
  ExistsE,
  Reit,
  BottomI,
  IP,
  QN,
  NegImp,
  Unknown,
};

/// Canonical spelling ("ForallE").
std::string_view rule_name(Rule r);

/// Accepts canonical names and the listing spellings (∀E, →E, ⊥, Re, Def,
/// EQUIV, ...). Returns Rule::Unknown for anything else.
Rule parse_rule_name(std::string_view label);

/// QN, NegImp and IP are admissible combinations of the basic rules.
bool is_derived_rule(Rule r);

// ---------- Proof lines ----------

/// A single line ("3") or an inclusive subproof range ("3-8").
struct Citation {
  int first = 0;
  int last = 0;
  bool range = false;

  static Citation line(int n) { return {n, n, false}; }
  static Citation span(int from, int to) { return {from, to, true}; }

  std::string to_string() const;
  friend auto operator<=>(const Citation&, const Citation&) = default;
};

struct Justification {
  Rule rule = Rule::Unknown;
  /// Spelling as written; only meaningful when rule is Unknown.
  std::string label;
  std::vector<Citation> cited;
};

enum class LineKind { Premise, Assumption, Derived, BoxedConstant };

std::string_view line_kind_name(LineKind k);

struct ProofLine {
  int number = 0;
  int depth = 0;
  LineKind kind = LineKind::Derived;
  /// Absent only for a bare boxed-constant opener "[c]".
  std::optional<Formula> formula;
  /// The constant of a boxed-constant opener.
  std::optional<std::string> constant;
  /// Present exactly for derived lines.
  std::optional<Justification> justification;

  bool opens_subproof() const {
    return kind == LineKind::Assumption || kind == LineKind::BoxedConstant;
  }
};

// ---------- Document ----------

/// A validated Fitch-style derivation. Construct with ProofDocument::create,
/// which enforces numbering, premise placement, subproof bracketing,
/// sentence-hood and a consistent signature.
class ProofDocument {
 public:
  struct Subproof {
    int opener = 0;  // line number of the assumption or [c] line
    int last = 0;    // last line inside the subproof (inclusive)
    int depth = 0;   // depth of the opener line
    int parent = -1; // index into subproofs(), -1 for top level
  };

  /// Throws ParseError (E_NUMBERING, E_STRUCTURE, E_UNCLOSED_SUBPROOF,
  /// E_OPEN_FORMULA, E_SIGNATURE).
  static ProofDocument create(std::string name, std::optional<Formula> goal,
                              std::vector<ProofLine> lines);

  const std::string& name() const { return name_; }
  const std::optional<Formula>& declared_goal() const { return goal_; }
  const std::vector<ProofLine>& lines() const { return lines_; }
  int size() const { return static_cast<int>(lines_.size()); }
  bool has_line(int n) const { return n >= 1 && n <= size(); }
  const ProofLine& line(int n) const { return lines_.at(static_cast<std::size_t>(n - 1)); }
  std::vector<Formula> premises() const;
  const Signature& signature() const { return signature_; }

  const std::vector<Subproof>& subproofs() const { return subproofs_; }
  /// Innermost subproof containing line n, or -1 when n is at top level.
  int innermost(int n) const { return innermost_.at(static_cast<std::size_t>(n - 1)); }
  /// Subproof whose opener is line n, or -1.
  int subproof_opened_at(int n) const;
  /// True when subproof index s contains line n.
  bool encloses(int s, int n) const;

 private:
  std::string name_;
  std::optional<Formula> goal_;
  std::vector<ProofLine> lines_;
  std::vector<Subproof> subproofs_;
  std::vector<int> innermost_;
  Signature signature_;
};

/// Parses the native `.ndp` text format. Throws ParseError carrying the
/// 1-based line and column.
ProofDocument parse_proof(std::string_view text);

/// Canonical `.ndp` rendering; parse_proof(format_proof(d)) reproduces d.
std::string format_proof(const ProofDocument& doc);

/// Citations usable from line `at`: earlier lines whose subproof encloses
/// `at`, and closed subproofs that are immediate children of a scope
/// enclosing `at`. Lines inside closed subproofs are not included.
std::set<Citation> accessible(const ProofDocument& doc, int at);

}  // namespace ndproof
