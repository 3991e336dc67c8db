#include "ndproof/syntax.hpp"

namespace ndproof {
namespace {

// Binding strength; higher binds tighter.
int precedence(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Iff:
      return 1;
    case Formula::Kind::Imp:
      return 2;
    case Formula::Kind::Or:
      return 3;
    case Formula::Kind::And:
      return 4;
    case Formula::Kind::Not:
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return 5;
    default:
      return 6;
  }
}

bool right_associative(Formula::Kind k) { return k == Formula::Kind::Imp || k == Formula::Kind::Iff; }

const char* symbol(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::And:
      return " ∧ ";
    case Formula::Kind::Or:
      return " ∨ ";
    case Formula::Kind::Imp:
      return " → ";
    case Formula::Kind::Iff:
      return " ↔ ";
    default:
      return "";
  }
}

void emit(const Formula& f, std::string& out);

void emit_wrapped(const Formula& f, bool parens, std::string& out) {
  if (parens) out += '(';
  emit(f, out);
  if (parens) out += ')';
}

void emit_term(const Term& t, std::string& out) {
  out += t.name();
  if (t.is_app()) {
    out += '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += ", ";
      emit_term(t.args()[i], out);
    }
    out += ')';
  }
}

void emit(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += "⊤";
      return;
    case Formula::Kind::Bottom:
      out += "⊥";
      return;
    case Formula::Kind::Pred:
      out += f.name();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          emit_term(f.args()[i], out);
        }
        out += ')';
      }
      return;
    case Formula::Kind::Not:
      out += "¬";
      emit_wrapped(f.operand(), precedence(f.operand()) < 5, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      out += f.is(Formula::Kind::Forall) ? "∀" : "∃";
      out += f.var();
      if (precedence(f.body()) < 5)
        emit_wrapped(f.body(), true, out);
      else
        emit_wrapped(f.body(), false, out += ' ');
      return;
    default: {
      const int p = precedence(f);
      const bool right = right_associative(f.kind());
      const int pl = precedence(f.lhs());
      const int pr = precedence(f.rhs());
      emit_wrapped(f.lhs(), right ? pl <= p : pl < p, out);
      out += symbol(f.kind());
      emit_wrapped(f.rhs(), right ? pr < p : pr <= p, out);
    }
  }
}

}  // namespace

std::string format_formula(const Formula& f) {
  std::string out;
  emit(f, out);
  return out;
}

std::string format_term(const Term& t) {
  std::string out;
  emit_term(t, out);
  return out;
}

}  // namespace ndproof
