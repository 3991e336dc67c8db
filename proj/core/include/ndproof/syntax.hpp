#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ndproof/errors.hpp"

namespace ndproof {

// ---------- Lexical conventions ----------

/// Identifiers start with an ASCII letter and continue with letters, digits
/// or underscores.
bool is_identifier(std::string_view s);

/// Variables are a single lowercase letter u..z with an optional digit suffix
/// (x, y1, z20). Every other identifier names a constant, function or
/// predicate.
bool is_variable_name(std::string_view s);

// ---------- Terms ----------

class Term {
 public:
  enum class Kind { Var, Const, App };

  static Term var(std::string name);
  static Term constant(std::string name);
  static Term app(std::string fn, std::vector<Term> args);

  Kind kind() const { return node_->kind; }
  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::Const; }
  bool is_app() const { return kind() == Kind::App; }
  const std::string& name() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---------- Formulas ----------

/// Immutable first-order formula. Copies share structure.
class Formula {
 public:
  enum class Kind { Top, Bottom, Pred, Not, And, Or, Imp, Iff, Forall, Exists };

  static Formula top();
  static Formula bottom();
  static Formula pred(std::string name, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula binary(Kind kind, Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula quantifier(Kind kind, std::string var, Formula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  bool is_binary() const;
  bool is_quantifier() const { return is(Kind::Forall) || is(Kind::Exists); }

  /// Predicate name for Pred, bound variable for Forall/Exists.
  const std::string& name() const { return node_->name; }
  const std::string& var() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  /// Operand of Not, body of a quantifier.
  const Formula& operand() const { return node_->children.front(); }
  const Formula& body() const { return node_->children.front(); }
  const Formula& lhs() const { return node_->children.front(); }
  const Formula& rhs() const { return node_->children.back(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::vector<Term> args;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---------- Text ----------

/// Parses a formula in either the Unicode or the ASCII spelling.
///
/// Binding strength, tightest first: ¬ and quantifier prefixes, ∧, ∨, →, ↔.
/// ∧ and ∨ associate to the left, → and ↔ to the right. A quantifier prefix
/// scopes over a single unary operand, so `∀x P(x) ∧ Q` is `(∀x P(x)) ∧ Q`.
/// Throws ParseError with code E_SYNTAX.
Formula parse_formula(std::string_view text);
Term parse_term(std::string_view text);

/// Canonical Unicode rendering with the fewest parentheses that re-parse to
/// the same tree.
std::string format_formula(const Formula& f);
std::string format_term(const Term& t);

// ---------- Syntactic algebra ----------

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> term_vars(const Term& t);
bool occurs_free(std::string_view x, const Formula& f);

std::set<std::string> constants_of(const Formula& f);
std::set<std::string> constants_of(const Term& t);

/// Every non-logical symbol (predicates, functions, constants).
std::set<std::string> symbols_of(const Formula& f);

/// f[t/x]. Throws CaptureError instead of renaming bound variables.
Formula substitute(const Formula& f, std::string_view x, const Term& t);

/// True iff no free occurrence of x in f sits under a binder of a variable of t.
bool is_free_for(const Term& t, std::string_view x, const Formula& f);

/// Equality up to consistent renaming of bound variables.
bool alpha_eq(const Formula& f, const Formula& g);

/// Replaces every occurrence of constant c by variable x. Empty when some
/// occurrence of c lies under a binder of x.
std::optional<Formula> abstract_constant(const Formula& f, std::string_view c,
                                         std::string_view x);

/// Leaves of the maximal `kind` spine rooted at f; {f} when f is not of `kind`.
std::vector<Formula> flatten(const Formula& f, Formula::Kind kind);

/// Every node reachable from f through `kind` nodes, excluding f itself.
std::vector<Formula> spine_members(const Formula& f, Formula::Kind kind);

/// Left-nested chain ((f1 op f2) op f3)...; requires at least one element.
Formula left_nest(std::span<const Formula> parts, Formula::Kind kind);

/// Outcome of reading `target` as an instance pattern[t/x].
struct InstanceMatch {
  enum class Status { NoMatch, Capture, Match };
  Status status = Status::NoMatch;
  /// The inferred t; empty when x does not occur free in the pattern.
  std::optional<Term> witness;

  bool matched() const { return status == Status::Match; }
};

/// Infers t such that target equals pattern[t/x]. With `alpha` set, bound
/// variable names may differ between pattern and target. Reports Capture when
/// the shapes agree but the inferred term uses a variable bound in target.
InstanceMatch match_instance(const Formula& pattern, std::string_view x, const Formula& target,
                             bool alpha = true);

// ---------- Signature ----------

struct Signature {
  std::map<std::string, int> predicates;
  std::map<std::string, int> functions;
  std::set<std::string> constants;

  /// Merges the symbols of f; throws SignatureError on an arity clash or a
  /// name used as two different kinds of symbol.
  void add(const Formula& f);
  void add(const Term& t);
  bool empty() const { return predicates.empty() && functions.empty() && constants.empty(); }

  static Signature infer(std::span<const Formula> formulas);

  friend bool operator==(const Signature&, const Signature&) = default;
};

}  // namespace ndproof
