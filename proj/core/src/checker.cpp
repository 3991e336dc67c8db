#include "ndproof/checker.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <variant>

namespace ndproof {

// ---------- Codes ----------

namespace {

struct CodeSpelling {
  DiagCode code;
  std::string_view name;
};

constexpr std::array kCodes{
    CodeSpelling{DiagCode::Scope, "E_SCOPE"},
    CodeSpelling{DiagCode::BadCitation, "E_BAD_CITATION"},
    CodeSpelling{DiagCode::RuleMismatch, "E_RULE_MISMATCH"},
    CodeSpelling{DiagCode::Freshness, "E_FRESHNESS"},
    CodeSpelling{DiagCode::NotFreeFor, "E_NOT_FREE_FOR"},
    CodeSpelling{DiagCode::DerivedInStrict, "E_DERIVED_IN_STRICT"},
    CodeSpelling{DiagCode::UnknownRule, "E_UNKNOWN_RULE"},
    CodeSpelling{DiagCode::GoalMismatch, "E_GOAL_MISMATCH"},
    CodeSpelling{DiagCode::RuleRelabeled, "W_RULE_RELABELED"},
};

}  // namespace

std::string_view diag_code_name(DiagCode c) {
  for (const auto& s : kCodes)
    if (s.code == c) return s.name;
  return "E_RULE_MISMATCH";
}

std::optional<DiagCode> parse_diag_code(std::string_view s) {
  for (const auto& c : kCodes)
    if (c.name == s) return c.code;
  return std::nullopt;
}

const std::vector<DiagCode>& all_diag_codes() {
  static const std::vector<DiagCode> codes = [] {
    std::vector<DiagCode> out;
    for (const auto& c : kCodes) out.push_back(c.code);
    return out;
  }();
  return codes;
}

bool CheckReport::has(DiagCode c) const {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [c](const Diagnostic& d) { return d.code == c; });
}

std::set<DiagCode> CheckReport::error_codes() const {
  std::set<DiagCode> out;
  for (const auto& d : diagnostics)
    if (d.is_error()) out.insert(d.code);
  return out;
}

// ---------- Fresh constants ----------

namespace {

std::set<std::string> line_symbols(const ProofLine& l) {
  std::set<std::string> out;
  if (l.formula) out = symbols_of(*l.formula);
  if (l.constant) out.insert(*l.constant);
  return out;
}

bool mentions(const ProofLine& l, const std::string& c) { return line_symbols(l).count(c) != 0; }

}  // namespace

std::string FreshConstants::next(std::string_view hint) const {
  std::string base(hint);
  if (contains(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = base + std::to_string(i);
    if (contains(candidate)) return candidate;
  }
}

FreshConstants fresh_constants(const ProofDocument& doc, int upto) {
  std::set<std::string> used;
  for (const auto& l : doc.lines()) {
    if (l.kind != LineKind::Premise && l.number > upto) continue;
    auto s = line_symbols(l);
    used.insert(s.begin(), s.end());
  }
  return FreshConstants(std::move(used));
}

// ---------- Line validation ----------

namespace {

std::string show(const Formula& f) { return format_formula(f); }

struct SubproofView {
  int opener = 0;
  int last = 0;
  std::optional<Formula> assumption;
  std::optional<std::string> constant;
  /// Last line at the subproof's own depth, when that line carries a formula.
  std::optional<Formula> conclusion;

  std::string range() const { return std::to_string(opener) + "-" + std::to_string(last); }
};

struct CitedLine {
  int number = 0;
  Formula formula;
};

using Cited = std::variant<CitedLine, SubproofView>;

const CitedLine* as_line(const Cited& c) { return std::get_if<CitedLine>(&c); }
const SubproofView* as_subproof(const Cited& c) { return std::get_if<SubproofView>(&c); }

/// ∃E witness of line n, read from its shape alone (no scope checks).
std::optional<std::string> exists_witness(const ProofDocument& doc, int n, bool alpha) {
  const ProofLine& l = doc.line(n);
  if (l.kind != LineKind::Derived || l.justification->rule != Rule::ExistsE) return std::nullopt;
  const auto& cited = l.justification->cited;
  if (cited.size() != 1 || cited[0].range || cited[0].first >= n || !doc.has_line(cited[0].first))
    return std::nullopt;
  const auto& src = doc.line(cited[0].first).formula;
  if (!src || !src->is(Formula::Kind::Exists)) return std::nullopt;
  auto m = match_instance(src->body(), src->var(), *l.formula, alpha);
  if (!m.matched() || !m.witness || !m.witness->is_const()) return std::nullopt;
  return m.witness->name();
}

std::optional<Formula> quantifier_negation_dual(const Formula& f) {
  using K = Formula::Kind;
  if (f.is(K::Not) && f.operand().is_quantifier()) {
    const Formula& q = f.operand();
    const K dual = q.is(K::Forall) ? K::Exists : K::Forall;
    return Formula::quantifier(dual, q.var(), Formula::negation(q.body()));
  }
  if (f.is_quantifier() && f.body().is(K::Not)) {
    const K dual = f.is(K::Forall) ? K::Exists : K::Forall;
    return Formula::negation(Formula::quantifier(dual, f.var(), f.body().operand()));
  }
  return std::nullopt;
}

std::optional<Formula> negated_implication_dual(const Formula& f) {
  using K = Formula::Kind;
  if (f.is(K::Not) && f.operand().is(K::Imp))
    return Formula::conjunction(f.operand().lhs(), Formula::negation(f.operand().rhs()));
  if (f.is(K::And) && f.rhs().is(K::Not))
    return Formula::negation(Formula::implication(f.lhs(), f.rhs().operand()));
  return std::nullopt;
}

class LineChecker {
 public:
  LineChecker(const ProofDocument& doc, const CheckConfig& cfg, int n)
      : doc_(doc), cfg_(cfg), n_(n), line_(doc.line(n)), concl_(*line_.formula) {}

  std::vector<Diagnostic> run() {
    const Justification& j = *line_.justification;
    if (j.rule == Rule::Unknown) {
      error(DiagCode::UnknownRule, "unknown rule '" + j.label + "'");
      return std::move(out_);
    }
    if (cfg_.strict && is_derived_rule(j.rule)) {
      error(DiagCode::DerivedInStrict,
            std::string(rule_name(j.rule)) + " is a derived rule and is not allowed in strict mode");
      return std::move(out_);
    }
    auto items = resolve(j.cited);
    if (!items) return std::move(out_);
    validate(j.rule, *items);
    return std::move(out_);
  }

 private:
  // ----- reporting -----

  void error(DiagCode code, std::string msg, std::vector<int> related = {}) {
    out_.push_back({n_, code, Severity::Error, std::move(msg), std::move(related)});
  }

  void warn(DiagCode code, std::string msg, std::vector<int> related = {}) {
    out_.push_back({n_, code, Severity::Warning, std::move(msg), std::move(related)});
  }

  void mismatch(const std::string& msg) { error(DiagCode::RuleMismatch, rule() + ": " + msg, cited_numbers()); }

  void bad_citation(const std::string& msg) {
    error(DiagCode::BadCitation, rule() + ": " + msg, cited_numbers());
  }

  std::string rule() const { return std::string(rule_name(line_.justification->rule)); }

  std::vector<int> cited_numbers() const {
    std::vector<int> out;
    for (const auto& c : line_.justification->cited) out.push_back(c.first);
    return out;
  }

  bool same(const Formula& a, const Formula& b) const { return cfg_.alpha_matching ? alpha_eq(a, b) : a == b; }

  // ----- citations -----

  std::optional<std::vector<Cited>> resolve(const std::vector<Citation>& cited) {
    const auto acc = accessible(doc_, n_);
    std::vector<Cited> items;
    bool ok = true;
    for (const auto& c : cited) {
      const std::string text = c.to_string();
      if (c.first >= n_ || c.last >= n_) {
        error(DiagCode::BadCitation,
              "citation " + text + (c.first == n_ || c.last == n_ ? " refers to this line itself"
                                                                   : " refers to a later line"),
              {c.first});
        ok = false;
        continue;
      }
      if (!doc_.has_line(c.first) || !doc_.has_line(c.last) || c.first > c.last) {
        error(DiagCode::BadCitation, "citation " + text + " does not refer to existing lines", {c.first});
        ok = false;
        continue;
      }
      if (!c.range) {
        const ProofLine& l = doc_.line(c.first);
        if (!l.formula) {
          error(DiagCode::BadCitation, "line " + text + " is a bare boxed constant and carries no formula",
                {c.first});
          ok = false;
        } else if (!acc.count(c)) {
          error(DiagCode::Scope, "line " + text + " is not accessible from line " + std::to_string(n_) +
                                     " (it lies inside a closed subproof)", {c.first});
          ok = false;
        } else {
          items.emplace_back(CitedLine{c.first, *l.formula});
        }
        continue;
      }
      const int s = doc_.subproof_opened_at(c.first);
      if (s < 0 || doc_.subproofs()[static_cast<std::size_t>(s)].last != c.last) {
        error(DiagCode::BadCitation, "range " + text + " is not a complete subproof", {c.first});
        ok = false;
        continue;
      }
      if (!acc.count(c)) {
        error(DiagCode::Scope, "subproof " + text + " is not accessible from line " + std::to_string(n_),
              {c.first});
        ok = false;
        continue;
      }
      const auto& sp = doc_.subproofs()[static_cast<std::size_t>(s)];
      SubproofView v;
      v.opener = sp.opener;
      v.last = sp.last;
      v.assumption = doc_.line(sp.opener).formula;
      v.constant = doc_.line(sp.opener).constant;
      const ProofLine& last = doc_.line(sp.last);
      if (last.depth == sp.depth && last.formula) v.conclusion = last.formula;
      items.emplace_back(std::move(v));
    }
    if (!ok) return std::nullopt;
    return items;
  }

  // Checks the citation list shape: `lines` single lines and `ranges`
  // subproofs, in any order; -1 means "any number >= the other bound".
  bool arity(const std::vector<Cited>& items, std::size_t lines, std::size_t ranges) {
    std::size_t nl = 0, nr = 0;
    for (const auto& it : items) (as_line(it) ? nl : nr)++;
    if (nl == lines && nr == ranges) return true;
    std::string want;
    if (lines) want += std::to_string(lines) + (lines == 1 ? " line" : " lines");
    if (lines && ranges) want += " and ";
    if (ranges) want += std::to_string(ranges) + (ranges == 1 ? " subproof" : " subproofs");
    bad_citation("expects " + want + ", got " + std::to_string(nl) + " line(s) and " + std::to_string(nr) +
                 " subproof(s)");
    return false;
  }

  // ----- dispatch -----

  void validate(Rule r, const std::vector<Cited>& items) {
    switch (r) {
      case Rule::NotI: return not_intro(items, false);
      case Rule::IP: return not_intro(items, true);
      case Rule::NotE: return not_elim(items);
      case Rule::AndI: return and_intro(items);
      case Rule::AndE: return and_elim(items);
      case Rule::OrI: return or_intro(items);
      case Rule::OrE: return or_elim(items);
      case Rule::ImpI: return imp_intro(items);
      case Rule::ImpE: return imp_elim(items);
      case Rule::IffI: return iff_intro(items);
      case Rule::IffE: return iff_elim(items);
      case Rule::ForallI: return forall_intro(items);
      case Rule::ForallE: return forall_elim(items);
      case Rule::ExistsI: return exists_intro(items);
      case Rule::ExistsE: return exists_elim(items);
      case Rule::Reit: return reiterate(items);
      case Rule::BottomI: return bottom_intro(items);
      case Rule::QN: return rewrite(items, quantifier_negation_dual, "¬∀xφ ⇄ ∃x¬φ or ¬∃xφ ⇄ ∀x¬φ");
      case Rule::NegImp: return rewrite(items, negated_implication_dual, "¬(φ → ψ) ⇄ φ ∧ ¬ψ");
      case Rule::Unknown: return;
    }
  }

  // ----- propositional rules -----

  // Subproof assume φ … ⊥ concludes ¬φ (NotI) or, from assume ¬φ, φ (IP).
  void not_intro(const std::vector<Cited>& items, bool indirect) {
    if (!arity(items, 0, 1)) return;
    const SubproofView& s = *as_subproof(items[0]);
    if (!s.assumption) return mismatch("subproof " + s.range() + " has no assumption");
    if (!s.conclusion || !s.conclusion->is(Formula::Kind::Bottom))
      return mismatch("subproof " + s.range() + " must end with ⊥ at its own level");
    const Formula& a = *s.assumption;
    const bool negates = same(concl_, Formula::negation(a));
    const bool affirms = a.is(Formula::Kind::Not) && same(concl_, a.operand());
    if (!indirect) {
      if (negates) return;
      if (affirms) {
        const std::string msg = "NotI concluding " + show(concl_) + " from assumption " + show(a) +
                                " is the derived rule IP";
        if (cfg_.strict) return error(DiagCode::DerivedInStrict, msg, {s.opener});
        return warn(DiagCode::RuleRelabeled, msg + "; accepted as IP", {s.opener});
      }
      return mismatch("expected ¬(" + show(a) + ")");
    }
    if (!a.is(Formula::Kind::Not)) return mismatch("assumption " + show(a) + " must be a negation");
    if (!affirms) return mismatch("expected " + show(a.operand()));
  }

  void not_elim(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!f.is(Formula::Kind::Not) || !f.operand().is(Formula::Kind::Not))
      return mismatch("line " + std::to_string(as_line(items[0])->number) + " is not a double negation");
    if (!same(concl_, f.operand().operand())) return mismatch("expected " + show(f.operand().operand()));
  }

  void and_intro(const std::vector<Cited>& items) {
    std::vector<Formula> parts;
    for (const auto& it : items) {
      if (!as_line(it)) return bad_citation("cites lines only");
      parts.push_back(as_line(it)->formula);
    }
    if (parts.size() < 2) return bad_citation("needs at least two lines");
    Formula expected = left_nest(parts, Formula::Kind::And);
    if (!same(concl_, expected)) return mismatch("expected " + show(expected));
  }

  void and_elim(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!f.is(Formula::Kind::And)) return mismatch(show(f) + " is not a conjunction");
    for (const auto& part : spine_members(f, Formula::Kind::And))
      if (same(part, concl_)) return;
    mismatch(show(concl_) + " is not a conjunct of " + show(f));
  }

  void or_intro(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!concl_.is(Formula::Kind::Or)) return mismatch(show(concl_) + " is not a disjunction");
    for (const auto& part : spine_members(concl_, Formula::Kind::Or))
      if (same(part, f)) return;
    mismatch(show(f) + " is not a disjunct of " + show(concl_));
  }

  // One disjunction plus, per disjunct, a line φᵢ → ψ or a subproof φᵢ … ψ.
  void or_elim(const std::vector<Cited>& items) {
    if (items.size() < 2) return bad_citation("needs a disjunction and at least one case");
    std::string first_reason;
    for (std::size_t d = 0; d < items.size(); ++d) {
      const CitedLine* dl = as_line(items[d]);
      if (!dl || !dl->formula.is(Formula::Kind::Or)) continue;
      std::vector<Formula> antecedents;
      std::string reason;
      for (std::size_t i = 0; i < items.size() && reason.empty(); ++i) {
        if (i == d) continue;
        if (const CitedLine* l = as_line(items[i])) {
          if (!l->formula.is(Formula::Kind::Imp) || !same(l->formula.rhs(), concl_))
            reason = "line " + std::to_string(l->number) + " is not of the form φ → " + show(concl_);
          else
            antecedents.push_back(l->formula.lhs());
        } else {
          const SubproofView& s = *as_subproof(items[i]);
          if (!s.assumption || !s.conclusion || !same(*s.conclusion, concl_))
            reason = "subproof " + s.range() + " does not derive " + show(concl_);
          else
            antecedents.push_back(*s.assumption);
        }
      }
      if (reason.empty()) {
        std::function<bool(const Formula&)> covers = [&](const Formula& g) {
          for (const auto& a : antecedents)
            if (same(a, g)) return true;
          return g.is(Formula::Kind::Or) && covers(g.lhs()) && covers(g.rhs());
        };
        if (covers(dl->formula)) return;
        reason = "the cases do not cover every disjunct of " + show(dl->formula);
      }
      if (first_reason.empty()) first_reason = reason;
    }
    mismatch(first_reason.empty() ? "no cited line is a disjunction" : first_reason);
  }

  void imp_intro(const std::vector<Cited>& items) {
    if (!arity(items, 0, 1)) return;
    const SubproofView& s = *as_subproof(items[0]);
    if (!s.assumption) return mismatch("subproof " + s.range() + " has no assumption");
    if (!s.conclusion) return mismatch("subproof " + s.range() + " does not end at its own level");
    Formula expected = Formula::implication(*s.assumption, *s.conclusion);
    if (!same(concl_, expected)) mismatch("expected " + show(expected));
  }

  void imp_elim(const std::vector<Cited>& items) {
    if (!arity(items, 2, 0)) return;
    const Formula& a = as_line(items[0])->formula;
    const Formula& b = as_line(items[1])->formula;
    for (const auto& [imp, ante] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
      if (!imp->is(Formula::Kind::Imp) || !same(imp->lhs(), *ante)) continue;
      if (same(imp->rhs(), concl_)) return;
      return mismatch("consequent of " + show(*imp) + " is " + show(imp->rhs()) + ", not " + show(concl_));
    }
    mismatch("expects φ → ψ and φ");
  }

  void iff_intro(const std::vector<Cited>& items) {
    if (items.size() != 2) return bad_citation("expects two citations (lines or subproofs)");
    std::vector<std::pair<Formula, Formula>> dirs;
    for (const auto& it : items) {
      if (const CitedLine* l = as_line(it)) {
        if (!l->formula.is(Formula::Kind::Imp))
          return mismatch("line " + std::to_string(l->number) + " is not a conditional");
        dirs.emplace_back(l->formula.lhs(), l->formula.rhs());
      } else {
        const SubproofView& s = *as_subproof(it);
        if (!s.assumption || !s.conclusion) return mismatch("subproof " + s.range() + " has no assumption/conclusion");
        dirs.emplace_back(*s.assumption, *s.conclusion);
      }
    }
    if (!concl_.is(Formula::Kind::Iff)) return mismatch(show(concl_) + " is not a biconditional");
    const Formula& l = concl_.lhs();
    const Formula& r = concl_.rhs();
    auto fits = [&](const auto& d1, const auto& d2) {
      return same(d1.first, l) && same(d1.second, r) && same(d2.first, r) && same(d2.second, l);
    };
    if (fits(dirs[0], dirs[1]) || fits(dirs[1], dirs[0])) return;
    mismatch("expects " + show(l) + " → " + show(r) + " and its converse");
  }

  void iff_elim(const std::vector<Cited>& items) {
    if (items.empty() || items.size() > 2) return bad_citation("expects one or two lines");
    for (const auto& it : items)
      if (!as_line(it)) return bad_citation("cites lines only");
    if (items.size() == 1) {
      const Formula& f = as_line(items[0])->formula;
      if (!f.is(Formula::Kind::Iff)) return mismatch(show(f) + " is not a biconditional");
      if (same(concl_, Formula::implication(f.lhs(), f.rhs())) ||
          same(concl_, Formula::implication(f.rhs(), f.lhs())))
        return;
      return mismatch("expected one direction of " + show(f));
    }
    const Formula& a = as_line(items[0])->formula;
    const Formula& b = as_line(items[1])->formula;
    for (const auto& [iff, side] : {std::pair{&a, &b}, std::pair{&b, &a}}) {
      if (!iff->is(Formula::Kind::Iff)) continue;
      if (same(iff->lhs(), *side) && same(iff->rhs(), concl_)) return;
      if (same(iff->rhs(), *side) && same(iff->lhs(), concl_)) return;
    }
    mismatch("expects φ ↔ ψ with one side, concluding the other");
  }

  void reiterate(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!same(f, concl_)) mismatch("line " + std::to_string(as_line(items[0])->number) + " is " + show(f));
  }

  void bottom_intro(const std::vector<Cited>& items) {
    if (!arity(items, 2, 0)) return;
    if (!concl_.is(Formula::Kind::Bottom)) return mismatch("concludes ⊥ only");
    const Formula& a = as_line(items[0])->formula;
    const Formula& b = as_line(items[1])->formula;
    if ((a.is(Formula::Kind::Not) && same(a.operand(), b)) || (b.is(Formula::Kind::Not) && same(b.operand(), a)))
      return;
    mismatch(show(a) + " and " + show(b) + " are not contradictory");
  }

  void rewrite(const std::vector<Cited>& items, std::optional<Formula> (*dual)(const Formula&),
               const char* schema) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    auto forward = dual(f);
    auto backward = dual(concl_);
    if ((forward && same(*forward, concl_)) || (backward && same(*backward, f))) return;
    mismatch("not an instance of " + std::string(schema));
  }

  // ----- quantifier rules -----

  void instance_result(const InstanceMatch& m, const Formula& pattern, const std::string& var,
                       const Formula& target, const char* what) {
    if (m.status == InstanceMatch::Status::NoMatch)
      return mismatch(show(target) + " is not an instance of " + show(pattern) + " for " + var);
    if (m.status == InstanceMatch::Status::Capture)
      return error(DiagCode::NotFreeFor,
                   std::string(what) + ": the instantiating term is not free for " + var + " in " + show(pattern),
                   cited_numbers());
    if (!m.witness) return;
    try {
      if (!same(substitute(pattern, var, *m.witness), target))
        mismatch(show(target) + " is not " + show(pattern) + "[" + format_term(*m.witness) + "/" + var + "]");
    } catch (const CaptureError& e) {
      error(DiagCode::NotFreeFor, std::string(what) + ": " + e.what(), cited_numbers());
    }
  }

  void forall_elim(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!f.is(Formula::Kind::Forall)) return mismatch(show(f) + " is not universally quantified");
    instance_result(match_instance(f.body(), f.var(), concl_, cfg_.alpha_matching), f.body(), f.var(), concl_,
                    "ForallE");
  }

  void exists_intro(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    if (!concl_.is(Formula::Kind::Exists)) return mismatch(show(concl_) + " is not existentially quantified");
    const Formula& src = as_line(items[0])->formula;
    instance_result(match_instance(concl_.body(), concl_.var(), src, cfg_.alpha_matching), concl_.body(),
                    concl_.var(), src, "ExistsI");
  }

  void exists_elim(const std::vector<Cited>& items) {
    if (!arity(items, 1, 0)) return;
    const Formula& f = as_line(items[0])->formula;
    if (!f.is(Formula::Kind::Exists)) return mismatch(show(f) + " is not existentially quantified");
    auto m = match_instance(f.body(), f.var(), concl_, cfg_.alpha_matching);
    if (m.status != InstanceMatch::Status::Match || !m.witness)
      return instance_result(m, f.body(), f.var(), concl_, "ExistsE");
    if (!m.witness->is_const()) return mismatch("the witness must be a constant, found " + format_term(*m.witness));
    const std::string& c = m.witness->name();
    for (int k = 1; k < n_; ++k) {
      if (mentions(doc_.line(k), c))
        return error(DiagCode::Freshness,
                     "witness constant " + c + " is not fresh: it already occurs on line " + std::to_string(k),
                     {k});
    }
    for (const auto& l : doc_.lines())
      if (l.kind == LineKind::Premise && mentions(l, c))
        return error(DiagCode::Freshness, "witness constant " + c + " occurs in premise " + std::to_string(l.number),
                     {l.number});
  }

  void forall_intro(const std::vector<Cited>& items) {
    if (items.size() != 1) return bad_citation("expects one line or one boxed subproof");
    if (!concl_.is(Formula::Kind::Forall)) return mismatch(show(concl_) + " is not universally quantified");
    const std::string& x = concl_.var();
    const Formula& target = concl_.body();

    if (const SubproofView* s = as_subproof(items[0])) {
      if (!s->constant) return mismatch("subproof " + s->range() + " must open with a boxed constant [c]");
      if (!s->conclusion) return mismatch("subproof " + s->range() + " does not end at its own level");
      const std::string& c = *s->constant;
      Formula body = s->assumption ? Formula::implication(*s->assumption, *s->conclusion) : *s->conclusion;
      auto abs = abstract_constant(body, c, x);
      if (!abs || !same(*abs, target))
        return mismatch("expected ∀" + x + " applied to " + show(body) + " with " + c + " replaced by " + x);
      for (int k = s->opener + 1; k <= s->last; ++k) {
        auto w = exists_witness(doc_, k, cfg_.alpha_matching);
        if (w && constants_of(body).count(*w))
          return error(DiagCode::Freshness,
                       show(body) + " contains " + *w + ", introduced by ExistsE on line " + std::to_string(k) +
                           " after " + c,
                       {k});
      }
      return;
    }

    const CitedLine& src = *as_line(items[0]);
    const Formula& f = src.formula;
    if (same(f, target) && !occurs_free(x, target)) return;  // vacuous generalisation

    std::string failure;
    int failure_line = 0;
    for (const auto& c : constants_of(f)) {
      auto abs = abstract_constant(f, c, x);
      if (!abs || !same(*abs, target)) continue;
      auto why = generalisation_blocker(c, f, failure_line);
      if (why.empty()) return;
      if (failure.empty()) failure = why;
    }
    if (!failure.empty())
      return error(DiagCode::Freshness, failure, failure_line ? std::vector<int>{failure_line} : std::vector<int>{});
    mismatch(show(concl_) + " does not generalise a constant of " + show(f));
  }

  // Why constant c may not be generalised on this line; empty when it may.
  std::string generalisation_blocker(const std::string& c, const Formula& f, int& related) {
    for (const auto& l : doc_.lines()) {
      if (l.kind == LineKind::Premise && mentions(l, c)) {
        related = l.number;
        return c + " occurs in premise " + std::to_string(l.number);
      }
    }
    for (int s = doc_.innermost(n_); s >= 0; s = doc_.subproofs()[static_cast<std::size_t>(s)].parent) {
      const ProofLine& opener = doc_.line(doc_.subproofs()[static_cast<std::size_t>(s)].opener);
      if (opener.formula && constants_of(*opener.formula).count(c)) {
        related = opener.number;
        return c + " occurs in the open assumption on line " + std::to_string(opener.number);
      }
    }
    int first = 0;
    for (int k = 1; k < n_ && !first; ++k)
      if (mentions(doc_.line(k), c)) first = k;
    const auto fconsts = constants_of(f);
    for (int k = 1; k < n_; ++k) {
      auto w = exists_witness(doc_, k, cfg_.alpha_matching);
      if (!w) continue;
      if (*w == c) {
        related = k;
        return c + " was introduced by ExistsE on line " + std::to_string(k);
      }
      if (k > first && fconsts.count(*w)) {
        related = k;
        return show(f) + " contains " + *w + ", introduced by ExistsE on line " + std::to_string(k) + " after " + c;
      }
    }
    return {};
  }

  const ProofDocument& doc_;
  const CheckConfig& cfg_;
  int n_;
  const ProofLine& line_;
  const Formula& concl_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> check_line(const ProofDocument& doc, int line, const CheckConfig& cfg) {
  if (!doc.has_line(line) || doc.line(line).kind != LineKind::Derived) return {};
  return LineChecker(doc, cfg, line).run();
}

CheckReport check_proof(const ProofDocument& doc, const CheckConfig& cfg) {
  CheckReport report;
  auto& diags = report.diagnostics;

  for (const auto& l : doc.lines()) {
    if (l.kind == LineKind::Derived) {
      auto d = check_line(doc, l.number, cfg);
      diags.insert(diags.end(), d.begin(), d.end());
    } else if (l.kind == LineKind::BoxedConstant) {
      const std::string& c = *l.constant;
      for (int k = 1; k < l.number; ++k) {
        if (mentions(doc.line(k), c)) {
          diags.push_back({l.number, DiagCode::Freshness, Severity::Error,
                           "boxed constant " + c + " is not fresh: it already occurs on line " + std::to_string(k),
                           {k}});
          break;
        }
      }
    }
  }

  if (doc.size() > 0) {
    const ProofLine& last = doc.line(doc.size());
    for (int k = 1; k <= doc.size(); ++k) {
      auto w = exists_witness(doc, k, cfg.alpha_matching);
      if (w && mentions(last, *w))
        diags.push_back({last.number, DiagCode::Freshness, Severity::Error,
                         "the conclusion mentions " + *w + ", the ExistsE witness introduced on line " +
                             std::to_string(k),
                         {k}});
    }
    if (doc.declared_goal()) {
      const bool ok = cfg.alpha_matching ? alpha_eq(*last.formula, *doc.declared_goal())
                                         : *last.formula == *doc.declared_goal();
      if (!ok)
        diags.push_back({last.number, DiagCode::GoalMismatch, Severity::Error,
                         "last line proves " + format_formula(*last.formula) + " but the declared goal is " +
                             format_formula(*doc.declared_goal()),
                         {}});
    }
  } else if (doc.declared_goal()) {
    diags.push_back({0, DiagCode::GoalMismatch, Severity::Error,
                     "the document has no lines but declares goal " + format_formula(*doc.declared_goal()), {}});
  }

  std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  report.accepted = std::none_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.is_error(); });
  if (report.accepted && doc.size() > 0) report.proved = doc.line(doc.size()).formula;
  return report;
}

}  // namespace ndproof
