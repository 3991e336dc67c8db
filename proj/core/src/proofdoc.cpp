#include "ndproof/proofdoc.hpp"

#include <array>
#include <utility>

namespace ndproof {

// ---------- Rules ----------

namespace {

struct RuleSpelling {
  std::string_view label;
  Rule rule;
};

constexpr std::array kCanonical{
    RuleSpelling{"NotI", Rule::NotI},       RuleSpelling{"NotE", Rule::NotE},
    RuleSpelling{"AndI", Rule::AndI},       RuleSpelling{"AndE", Rule::AndE},
    RuleSpelling{"OrI", Rule::OrI},         RuleSpelling{"OrE", Rule::OrE},
    RuleSpelling{"ImpI", Rule::ImpI},       RuleSpelling{"ImpE", Rule::ImpE},
    RuleSpelling{"IffI", Rule::IffI},       RuleSpelling{"IffE", Rule::IffE},
    RuleSpelling{"ForallI", Rule::ForallI}, RuleSpelling{"ForallE", Rule::ForallE},
    RuleSpelling{"ExistsI", Rule::ExistsI}, RuleSpelling{"ExistsE", Rule::ExistsE},
    RuleSpelling{"Reit", Rule::Reit},       RuleSpelling{"BottomI", Rule::BottomI},
    RuleSpelling{"IP", Rule::IP},           RuleSpelling{"QN", Rule::QN},
    RuleSpelling{"NegImp", Rule::NegImp},
};

// Spellings found in hand-written Fitch listings.
constexpr std::array kAliases{
    RuleSpelling{"¬I", Rule::NotI},    RuleSpelling{"~I", Rule::NotI},
    RuleSpelling{"¬E", Rule::NotE},    RuleSpelling{"~E", Rule::NotE},
    RuleSpelling{"∧I", Rule::AndI},    RuleSpelling{"&I", Rule::AndI},
    RuleSpelling{"∧E", Rule::AndE},    RuleSpelling{"&E", Rule::AndE},
    RuleSpelling{"∨I", Rule::OrI},     RuleSpelling{"∨E", Rule::OrE},
    RuleSpelling{"→I", Rule::ImpI},    RuleSpelling{"->I", Rule::ImpI},
    RuleSpelling{"→E", Rule::ImpE},    RuleSpelling{"->E", Rule::ImpE},
    RuleSpelling{"↔I", Rule::IffI},    RuleSpelling{"<->I", Rule::IffI},
    RuleSpelling{"↔E", Rule::IffE},    RuleSpelling{"<->E", Rule::IffE},
    RuleSpelling{"∀I", Rule::ForallI}, RuleSpelling{"∀E", Rule::ForallE},
    RuleSpelling{"∃I", Rule::ExistsI}, RuleSpelling{"∃E", Rule::ExistsE},
    RuleSpelling{"Re", Rule::Reit},    RuleSpelling{"R", Rule::Reit},
    RuleSpelling{"⊥", Rule::BottomI},  RuleSpelling{"⊥I", Rule::BottomI},
    RuleSpelling{"Def", Rule::QN},     RuleSpelling{"EQUIV", Rule::NegImp},
};

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& s : kCanonical)
    if (s.rule == r) return s.label;
  return "Unknown";
}

Rule parse_rule_name(std::string_view label) {
  for (const auto& s : kCanonical)
    if (s.label == label) return s.rule;
  for (const auto& s : kAliases)
    if (s.label == label) return s.rule;
  return Rule::Unknown;
}

bool is_derived_rule(Rule r) { return r == Rule::QN || r == Rule::NegImp || r == Rule::IP; }

std::string Citation::to_string() const {
  if (!range) return std::to_string(first);
  return std::to_string(first) + "-" + std::to_string(last);
}

std::string_view line_kind_name(LineKind k) {
  switch (k) {
    case LineKind::Premise:
      return "premise";
    case LineKind::Assumption:
      return "assumption";
    case LineKind::Derived:
      return "derived";
    case LineKind::BoxedConstant:
      return "boxed-constant";
  }
  return "derived";
}

// ---------- Document validation ----------

namespace {

// `line` is the proof line number; the text parser maps it to a file line.
[[noreturn]] void reject(const char* code, const std::string& msg, int line) {
  ParseError e(code, "line " + std::to_string(line) + ": " + msg);
  e.at_line(static_cast<std::size_t>(line), 0);
  throw e;
}

void require_sentence(const Formula& f, int line) {
  auto fv = free_vars(f);
  if (fv.empty()) return;
  std::string names;
  for (const auto& v : fv) names += (names.empty() ? "" : ", ") + v;
  reject("E_OPEN_FORMULA", "formula " + format_formula(f) + " has free variables: " + names, line);
}

}  // namespace

ProofDocument ProofDocument::create(std::string name, std::optional<Formula> goal,
                                    std::vector<ProofLine> lines) {
  ProofDocument doc;
  doc.name_ = std::move(name);
  doc.goal_ = std::move(goal);
  doc.lines_ = std::move(lines);
  doc.innermost_.assign(doc.lines_.size(), -1);

  std::vector<int> open;  // stack of subproof indices
  bool past_premises = false;
  for (std::size_t i = 0; i < doc.lines_.size(); ++i) {
    const ProofLine& l = doc.lines_[i];
    const int n = static_cast<int>(i) + 1;
    if (l.number != n)
      reject("E_NUMBERING", "expected line number " + std::to_string(n) + ", found " +
                                std::to_string(l.number), l.number);
    if (l.depth < 0) reject("E_STRUCTURE", "negative depth", n);

    switch (l.kind) {
      case LineKind::Premise:
        if (past_premises) reject("E_STRUCTURE", "premises must precede all other lines", n);
        if (l.depth != 0) reject("E_STRUCTURE", "premises must be at depth 0", n);
        if (l.justification) reject("E_STRUCTURE", "a premise takes no justification", n);
        break;
      case LineKind::Assumption:
      case LineKind::BoxedConstant:
        past_premises = true;
        if (l.justification) reject("E_STRUCTURE", "an assumption takes no justification", n);
        if (l.depth < 1) reject("E_STRUCTURE", "an assumption must open a subproof (depth >= 1)", n);
        if (l.depth > static_cast<int>(open.size()) + 1)
          reject("E_STRUCTURE", "subproof depth jumps from " + std::to_string(open.size()) + " to " +
                                    std::to_string(l.depth), n);
        break;
      case LineKind::Derived:
        past_premises = true;
        if (!l.justification) reject("E_STRUCTURE", "a derived line needs a rule", n);
        if (l.depth > static_cast<int>(open.size()))
          reject("E_STRUCTURE", "depth " + std::to_string(l.depth) +
                                    " without an assumption opening the subproof", n);
        break;
    }
    if (l.kind == LineKind::BoxedConstant) {
      if (!l.constant || !is_identifier(*l.constant) || is_variable_name(*l.constant))
        reject("E_STRUCTURE", "boxed opener needs a constant name", n);
    } else {
      if (l.constant) reject("E_STRUCTURE", "only boxed openers name a constant", n);
      if (!l.formula) reject("E_STRUCTURE", "missing formula", n);
    }

    // Close subproofs deeper than this line; an opener at depth d also
    // closes a sibling already open at d.
    const int keep = l.opens_subproof() ? l.depth - 1 : l.depth;
    while (static_cast<int>(open.size()) > keep) open.pop_back();
    if (l.opens_subproof()) {
      Subproof s;
      s.opener = n;
      s.last = n;
      s.depth = l.depth;
      s.parent = open.empty() ? -1 : open.back();
      doc.subproofs_.push_back(s);
      open.push_back(static_cast<int>(doc.subproofs_.size()) - 1);
    }
    for (int s : open) doc.subproofs_[static_cast<std::size_t>(s)].last = n;
    doc.innermost_[i] = open.empty() ? -1 : open.back();

    if (l.formula) require_sentence(*l.formula, n);
    try {
      if (l.formula) doc.signature_.add(*l.formula);
      if (l.constant) doc.signature_.add(Term::constant(*l.constant));
    } catch (const SignatureError& e) {
      reject("E_SIGNATURE", e.what(), n);
    }
  }
  if (!open.empty()) {
    const int opener = doc.subproofs_[static_cast<std::size_t>(open.front())].opener;
    reject("E_UNCLOSED_SUBPROOF", "subproof opened here is never closed", opener);
  }
  if (doc.goal_) {
    if (!free_vars(*doc.goal_).empty())
      throw ParseError("E_OPEN_FORMULA", "goal " + format_formula(*doc.goal_) + " has free variables");
    try {
      doc.signature_.add(*doc.goal_);
    } catch (const SignatureError& e) {
      throw ParseError("E_SIGNATURE", std::string("goal: ") + e.what());
    }
  }
  return doc;
}

std::vector<Formula> ProofDocument::premises() const {
  std::vector<Formula> out;
  for (const auto& l : lines_)
    if (l.kind == LineKind::Premise) out.push_back(*l.formula);
  return out;
}

int ProofDocument::subproof_opened_at(int n) const {
  for (std::size_t i = 0; i < subproofs_.size(); ++i)
    if (subproofs_[i].opener == n) return static_cast<int>(i);
  return -1;
}

bool ProofDocument::encloses(int s, int n) const {
  const auto& sp = subproofs_.at(static_cast<std::size_t>(s));
  return sp.opener <= n && n <= sp.last;
}

// ---------- Accessibility ----------

std::set<Citation> accessible(const ProofDocument& doc, int at) {
  std::set<Citation> out;
  auto scope_encloses_at = [&](int s) { return s < 0 || doc.encloses(s, at); };
  for (int n = 1; n < at && n <= doc.size(); ++n) {
    if (scope_encloses_at(doc.innermost(n))) {
      const ProofLine& l = doc.line(n);
      if (l.formula) out.insert(Citation::line(n));
    }
  }
  for (const auto& sp : doc.subproofs()) {
    if (sp.last < at && scope_encloses_at(sp.parent)) out.insert(Citation::span(sp.opener, sp.last));
  }
  return out;
}

}  // namespace ndproof
