#include "ndproof/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ndproof {

// ---------- Lexical conventions ----------

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_variable_name(std::string_view s) {
  if (s.empty() || s.front() < 'u' || s.front() > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

// ---------- Construction ----------

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Var, std::move(name), {}}));
}

Term Term::constant(std::string name) {
  return Term(std::make_shared<const Node>(Node{Kind::Const, std::move(name), {}}));
}

Term Term::app(std::string fn, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(Node{Kind::App, std::move(fn), std::move(args)}));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.args() == b.args();
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Top, {}, {}, {}}));
  return t;
}

Formula Formula::bottom() {
  static const Formula b(std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}}));
  return b;
}

Formula Formula::pred(std::string name, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Pred, std::move(name), std::move(args), {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, {}, {}, {std::move(f)}}));
}

Formula Formula::binary(Kind kind, Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{kind, {}, {}, {std::move(a), std::move(b)}}));
}

Formula Formula::conjunction(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(Kind::Imp, std::move(a), std::move(b)); }
Formula Formula::biconditional(Formula a, Formula b) { return binary(Kind::Iff, std::move(a), std::move(b)); }

Formula Formula::quantifier(Kind kind, std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(Node{kind, std::move(var), {}, {std::move(body)}}));
}

Formula Formula::forall(std::string var, Formula body) {
  return quantifier(Kind::Forall, std::move(var), std::move(body));
}

Formula Formula::exists(std::string var, Formula body) {
  return quantifier(Kind::Exists, std::move(var), std::move(body));
}

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      return true;
    default:
      return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  return a.kind() == b.kind() && a.name() == b.name() && a.args() == b.args() &&
         a.node_->children == b.node_->children;
}

// ---------- Free variables and symbols ----------

namespace {

void collect_term_vars(const Term& t, std::set<std::string>& out) {
  if (t.is_var()) {
    out.insert(t.name());
  } else {
    for (const auto& a : t.args()) collect_term_vars(a, out);
  }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Pred: {
      std::set<std::string> vs;
      for (const auto& a : f.args()) collect_term_vars(a, vs);
      for (const auto& v : vs)
        if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
      return;
    }
    case Formula::Kind::Not:
      collect_free(f.operand(), bound, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      bound.push_back(f.var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
    default:
      collect_free(f.lhs(), bound, out);
      collect_free(f.rhs(), bound, out);
  }
}

void collect_term_constants(const Term& t, std::set<std::string>& out) {
  if (t.is_const()) {
    out.insert(t.name());
  } else {
    for (const auto& a : t.args()) collect_term_constants(a, out);
  }
}

template <typename Fn>
void for_each_term(const Formula& f, Fn&& fn) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Pred:
      for (const auto& a : f.args()) fn(a);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      for_each_term(f.operand(), fn);
      return;
    default:
      for_each_term(f.lhs(), fn);
      for_each_term(f.rhs(), fn);
  }
}

}  // namespace

std::set<std::string> term_vars(const Term& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool occurs_free(std::string_view x, const Formula& f) {
  return free_vars(f).count(std::string(x)) != 0;
}

std::set<std::string> constants_of(const Term& t) {
  std::set<std::string> out;
  collect_term_constants(t, out);
  return out;
}

std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  for_each_term(f, [&](const Term& t) { collect_term_constants(t, out); });
  return out;
}

std::set<std::string> symbols_of(const Formula& f) {
  std::set<std::string> out;
  std::function<void(const Term&)> visit_term = [&](const Term& t) {
    if (t.is_var()) return;
    out.insert(t.name());
    for (const auto& a : t.args()) visit_term(a);
  };
  std::function<void(const Formula&)> visit = [&](const Formula& g) {
    switch (g.kind()) {
      case Formula::Kind::Top:
      case Formula::Kind::Bottom:
        return;
      case Formula::Kind::Pred:
        out.insert(g.name());
        for (const auto& a : g.args()) visit_term(a);
        return;
      case Formula::Kind::Not:
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        visit(g.operand());
        return;
      default:
        visit(g.lhs());
        visit(g.rhs());
    }
  };
  visit(f);
  return out;
}

// ---------- Substitution ----------

namespace {

Term subst_term(const Term& t, std::string_view x, const Term& by) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.name() == x ? by : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::App: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(subst_term(a, x, by));
      return Term::app(t.name(), std::move(args));
    }
  }
  return t;
}

std::string binder_text(const Formula& q) {
  return (q.is(Formula::Kind::Forall) ? "∀" : "∃") + q.var();
}

// Shared walk for substitute and is_free_for. `position` counts nodes in
// pre-order so a CaptureError can point at the offending binder.
Formula subst(const Formula& f, std::string_view x, const Term& t, const std::set<std::string>& tvars,
              std::size_t& position) {
  const std::size_t here = position++;
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      args.reserve(f.args().size());
      for (const auto& a : f.args()) args.push_back(subst_term(a, x, t));
      return Formula::pred(f.name(), std::move(args));
    }
    case Formula::Kind::Not:
      return Formula::negation(subst(f.operand(), x, t, tvars, position));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (f.var() == x) return f;
      if (tvars.count(f.var()) && occurs_free(x, f.body()))
        throw CaptureError(std::string(x), binder_text(f), here);
      return Formula::quantifier(f.kind(), f.var(), subst(f.body(), x, t, tvars, position));
    }
    default: {
      Formula l = subst(f.lhs(), x, t, tvars, position);
      Formula r = subst(f.rhs(), x, t, tvars, position);
      return Formula::binary(f.kind(), std::move(l), std::move(r));
    }
  }
}

bool free_for(const Term& t, std::string_view x, const Formula& f, const std::set<std::string>& tvars) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
    case Formula::Kind::Pred:
      return true;
    case Formula::Kind::Not:
      return free_for(t, x, f.operand(), tvars);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      if (f.var() == x) return true;
      if (tvars.count(f.var()) && occurs_free(x, f.body())) return false;
      return free_for(t, x, f.body(), tvars);
    default:
      return free_for(t, x, f.lhs(), tvars) && free_for(t, x, f.rhs(), tvars);
  }
}

}  // namespace

Formula substitute(const Formula& f, std::string_view x, const Term& t) {
  std::size_t position = 0;
  return subst(f, x, t, term_vars(t), position);
}

bool is_free_for(const Term& t, std::string_view x, const Formula& f) {
  return free_for(t, x, f, term_vars(t));
}

// ---------- Alpha equivalence ----------

namespace {

using Binders = std::vector<std::string>;

// Distance from the innermost binder of `name`, or -1 when free.
int binder_index(const Binders& b, std::string_view name) {
  for (std::size_t i = b.size(); i-- > 0;)
    if (b[i] == name) return static_cast<int>(b.size() - 1 - i);
  return -1;
}

bool alpha_term(const Term& a, const Term& b, const Binders& ba, const Binders& bb) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var: {
      int ia = binder_index(ba, a.name());
      int ib = binder_index(bb, b.name());
      if (ia != ib) return false;
      return ia >= 0 || a.name() == b.name();
    }
    case Term::Kind::Const:
      return a.name() == b.name();
    case Term::Kind::App:
      if (a.name() != b.name() || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (!alpha_term(a.args()[i], b.args()[i], ba, bb)) return false;
      return true;
  }
  return false;
}

bool alpha(const Formula& f, const Formula& g, Binders& bf, Binders& bg) {
  if (f.kind() != g.kind()) return false;
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return true;
    case Formula::Kind::Pred:
      if (f.name() != g.name() || f.args().size() != g.args().size()) return false;
      for (std::size_t i = 0; i < f.args().size(); ++i)
        if (!alpha_term(f.args()[i], g.args()[i], bf, bg)) return false;
      return true;
    case Formula::Kind::Not:
      return alpha(f.operand(), g.operand(), bf, bg);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bf.push_back(f.var());
      bg.push_back(g.var());
      bool ok = alpha(f.body(), g.body(), bf, bg);
      bf.pop_back();
      bg.pop_back();
      return ok;
    }
    default:
      return alpha(f.lhs(), g.lhs(), bf, bg) && alpha(f.rhs(), g.rhs(), bf, bg);
  }
}

}  // namespace

bool alpha_eq(const Formula& f, const Formula& g) {
  Binders bf, bg;
  return alpha(f, g, bf, bg);
}

// ---------- Abstraction and matching ----------

namespace {

Term abstract_term(const Term& t, std::string_view c, std::string_view x) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t;
    case Term::Kind::Const:
      return t.name() == c ? Term::var(std::string(x)) : t;
    case Term::Kind::App: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(abstract_term(a, c, x));
      return Term::app(t.name(), std::move(args));
    }
  }
  return t;
}

std::optional<Formula> abstract(const Formula& f, std::string_view c, std::string_view x) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return f;
    case Formula::Kind::Pred: {
      std::vector<Term> args;
      for (const auto& a : f.args()) args.push_back(abstract_term(a, c, x));
      return Formula::pred(f.name(), std::move(args));
    }
    case Formula::Kind::Not: {
      auto o = abstract(f.operand(), c, x);
      if (!o) return std::nullopt;
      return Formula::negation(std::move(*o));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      if (f.var() == x && constants_of(f.body()).count(std::string(c))) return std::nullopt;
      auto b = abstract(f.body(), c, x);
      if (!b) return std::nullopt;
      return Formula::quantifier(f.kind(), f.var(), std::move(*b));
    }
    default: {
      auto l = abstract(f.lhs(), c, x);
      auto r = abstract(f.rhs(), c, x);
      if (!l || !r) return std::nullopt;
      return Formula::binary(f.kind(), std::move(*l), std::move(*r));
    }
  }
}

struct Matcher {
  std::string_view x;
  bool alpha;
  Binders pb, tb;
  std::optional<Term> witness;
  bool capture = false;

  bool term(const Term& p, const Term& t) {
    switch (p.kind()) {
      case Term::Kind::Var: {
        int ip = binder_index(pb, p.name());
        if (ip >= 0) return t.is_var() && binder_index(tb, t.name()) == ip;
        if (p.name() == x) {
          for (const auto& v : term_vars(t))
            if (binder_index(tb, v) >= 0) capture = true;
          if (witness) return *witness == t;
          witness = t;
          return true;
        }
        return t.is_var() && t.name() == p.name() && binder_index(tb, t.name()) < 0;
      }
      case Term::Kind::Const:
        return t.is_const() && t.name() == p.name();
      case Term::Kind::App:
        if (!t.is_app() || t.name() != p.name() || t.args().size() != p.args().size()) return false;
        for (std::size_t i = 0; i < p.args().size(); ++i)
          if (!term(p.args()[i], t.args()[i])) return false;
        return true;
    }
    return false;
  }

  bool formula(const Formula& p, const Formula& t) {
    if (p.kind() != t.kind()) return false;
    switch (p.kind()) {
      case Formula::Kind::Top:
      case Formula::Kind::Bottom:
        return true;
      case Formula::Kind::Pred:
        if (p.name() != t.name() || p.args().size() != t.args().size()) return false;
        for (std::size_t i = 0; i < p.args().size(); ++i)
          if (!term(p.args()[i], t.args()[i])) return false;
        return true;
      case Formula::Kind::Not:
        return formula(p.operand(), t.operand());
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        if (!alpha && p.var() != t.var()) return false;
        pb.push_back(p.var());
        tb.push_back(t.var());
        bool ok = formula(p.body(), t.body());
        pb.pop_back();
        tb.pop_back();
        return ok;
      }
      default:
        return formula(p.lhs(), t.lhs()) && formula(p.rhs(), t.rhs());
    }
  }
};

}  // namespace

std::optional<Formula> abstract_constant(const Formula& f, std::string_view c, std::string_view x) {
  return abstract(f, c, x);
}

InstanceMatch match_instance(const Formula& pattern, std::string_view x, const Formula& target,
                             bool alpha) {
  Matcher m{x, alpha, {}, {}, std::nullopt, false};
  InstanceMatch result;
  if (!m.formula(pattern, target)) return result;
  result.witness = m.witness;
  result.status = m.capture ? InstanceMatch::Status::Capture : InstanceMatch::Status::Match;
  return result;
}

// ---------- n-ary views ----------

std::vector<Formula> flatten(const Formula& f, Formula::Kind kind) {
  if (!f.is(kind)) return {f};
  auto out = flatten(f.lhs(), kind);
  auto right = flatten(f.rhs(), kind);
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

std::vector<Formula> spine_members(const Formula& f, Formula::Kind kind) {
  std::vector<Formula> out;
  if (!f.is(kind)) return out;
  for (const Formula* side : {&f.lhs(), &f.rhs()}) {
    out.push_back(*side);
    auto inner = spine_members(*side, kind);
    out.insert(out.end(), inner.begin(), inner.end());
  }
  return out;
}

Formula left_nest(std::span<const Formula> parts, Formula::Kind kind) {
  Formula acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = Formula::binary(kind, acc, parts[i]);
  return acc;
}

// ---------- Signature ----------

namespace {

void claim(Signature& sig, const std::string& name, char kind, int arity) {
  const bool as_pred = sig.predicates.count(name) != 0;
  const bool as_fn = sig.functions.count(name) != 0;
  const bool as_const = sig.constants.count(name) != 0;
  auto clash = [&](const char* other) {
    throw SignatureError("symbol '" + name + "' is used both as " + other + " and as " +
                         (kind == 'p' ? "a predicate" : kind == 'f' ? "a function" : "a constant"));
  };
  switch (kind) {
    case 'p':
      if (as_fn) clash("a function");
      if (as_const) clash("a constant");
      if (auto it = sig.predicates.find(name); it != sig.predicates.end() && it->second != arity)
        throw SignatureError("predicate '" + name + "' is used with arity " + std::to_string(it->second) +
                             " and " + std::to_string(arity));
      sig.predicates[name] = arity;
      break;
    case 'f':
      if (as_pred) clash("a predicate");
      if (as_const) clash("a constant");
      if (auto it = sig.functions.find(name); it != sig.functions.end() && it->second != arity)
        throw SignatureError("function '" + name + "' is used with arity " + std::to_string(it->second) +
                             " and " + std::to_string(arity));
      sig.functions[name] = arity;
      break;
    default:
      if (as_pred) clash("a predicate");
      if (as_fn) clash("a function");
      sig.constants.insert(name);
  }
}

}  // namespace

void Signature::add(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return;
    case Term::Kind::Const:
      claim(*this, t.name(), 'c', 0);
      return;
    case Term::Kind::App:
      claim(*this, t.name(), 'f', static_cast<int>(t.args().size()));
      for (const auto& a : t.args()) add(a);
  }
}

void Signature::add(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      return;
    case Formula::Kind::Pred:
      claim(*this, f.name(), 'p', static_cast<int>(f.args().size()));
      for (const auto& a : f.args()) add(a);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      add(f.operand());
      return;
    default:
      add(f.lhs());
      add(f.rhs());
  }
}

Signature Signature::infer(std::span<const Formula> formulas) {
  Signature sig;
  for (const auto& f : formulas) sig.add(f);
  return sig;
}

}  // namespace ndproof
