#include <algorithm>
#include <array>
#include <cctype>

#include "ndproof/syntax.hpp"

namespace ndproof {
namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Comma,
  Dot,
  Not,
  And,
  Or,
  Imp,
  Iff,
  Forall,
  Exists,
  Top,
  Bottom,
  Ident,
  Bad,
};

struct Token {
  Tok kind = Tok::End;
  std::string_view text;
  std::size_t offset = 0;
};

struct Spelling {
  std::string_view text;
  Tok kind;
};

constexpr std::array kSymbols{
    Spelling{"<->", Tok::Iff},   Spelling{"->", Tok::Imp},   Spelling{"¬", Tok::Not},
    Spelling{"∧", Tok::And},     Spelling{"∨", Tok::Or},     Spelling{"→", Tok::Imp},
    Spelling{"↔", Tok::Iff},     Spelling{"∀", Tok::Forall}, Spelling{"∃", Tok::Exists},
    Spelling{"⊤", Tok::Top},     Spelling{"⊥", Tok::Bottom}, Spelling{"~", Tok::Not},
    Spelling{"&", Tok::And},     Spelling{"|", Tok::Or},     Spelling{"(", Tok::LParen},
    Spelling{")", Tok::RParen},  Spelling{",", Tok::Comma},  Spelling{".", Tok::Dot},
};

constexpr std::array kKeywords{
    Spelling{"not", Tok::Not},   Spelling{"forall", Tok::Forall}, Spelling{"exists", Tok::Exists},
    Spelling{"true", Tok::Top},  Spelling{"false", Tok::Bottom},
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space();
    Token t;
    t.offset = pos_;
    if (pos_ >= src_.size()) return t;
    for (const auto& s : kSymbols) {
      if (src_.substr(pos_, s.text.size()) == s.text) {
        t.kind = s.kind;
        t.text = src_.substr(pos_, s.text.size());
        pos_ += s.text.size();
        return t;
      }
    }
    if (std::isalpha(static_cast<unsigned char>(src_[pos_]))) {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      t.text = src_.substr(pos_, end - pos_);
      t.kind = Tok::Ident;
      for (const auto& k : kKeywords)
        if (t.text == k.text) t.kind = k.kind;
      pos_ = end;
      return t;
    }
    // Consume one UTF-8 code point so the error names the whole character.
    std::size_t len = 1;
    const auto lead = static_cast<unsigned char>(src_[pos_]);
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    t.kind = Tok::Bad;
    t.text = src_.substr(pos_, len);
    pos_ = std::min(src_.size(), pos_ + len);
    return t;
  }

  // A bound variable directly follows its quantifier, possibly glued to the
  // body as in "∃xM(x)", so it is read with the variable pattern only.
  Token bound_variable() {
    skip_space();
    Token t;
    t.offset = pos_;
    if (pos_ < src_.size() && src_[pos_] >= 'u' && src_[pos_] <= 'z') {
      std::size_t end = pos_ + 1;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      t.kind = Tok::Ident;
      t.text = src_.substr(pos_, end - pos_);
      pos_ = end;
    } else {
      t.kind = Tok::Bad;
      t.text = src_.substr(pos_, pos_ < src_.size() ? 1 : 0);
    }
    return t;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

const std::vector<std::string> kFormulaStart{"'('", "'¬'", "'∀'", "'∃'", "'⊤'", "'⊥'", "predicate"};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + std::string(t.text) + "'";
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { advance(); }

  Formula formula() { return iff(); }

  Term term() {
    if (cur_.kind != Tok::Ident) fail({"term"});
    Token id = cur_;
    advance();
    if (cur_.kind == Tok::LParen) {
      if (is_variable_name(id.text))
        throw ParseError("E_SYNTAX", "variable '" + std::string(id.text) + "' cannot take arguments",
                         id.offset, {"',' or ')'"});
      return Term::app(std::string(id.text), arguments());
    }
    if (is_variable_name(id.text)) return Term::var(std::string(id.text));
    return Term::constant(std::string(id.text));
  }

  void expect_end() {
    if (cur_.kind != Tok::End) fail({"end of input", "'∧'", "'∨'", "'→'", "'↔'"});
  }

 private:
  Formula iff() {
    Formula lhs = imp();
    if (cur_.kind == Tok::Iff) {
      advance();
      return Formula::biconditional(lhs, iff());
    }
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (cur_.kind == Tok::Imp) {
      advance();
      return Formula::implication(lhs, imp());
    }
    return lhs;
  }

  Formula disj() {
    Formula acc = conj();
    while (cur_.kind == Tok::Or) {
      advance();
      acc = Formula::disjunction(acc, conj());
    }
    return acc;
  }

  Formula conj() {
    Formula acc = unary();
    while (cur_.kind == Tok::And) {
      advance();
      acc = Formula::conjunction(acc, unary());
    }
    return acc;
  }

  Formula unary() {
    switch (cur_.kind) {
      case Tok::Not:
        advance();
        return Formula::negation(unary());
      case Tok::Forall:
      case Tok::Exists: {
        const auto kind = cur_.kind == Tok::Forall ? Formula::Kind::Forall : Formula::Kind::Exists;
        Token v = lex_.bound_variable();
        if (v.kind != Tok::Ident)
          throw ParseError("E_SYNTAX", "expected a variable (u..z, optionally numbered) after quantifier",
                           v.offset, {"variable"});
        advance();
        if (cur_.kind == Tok::Dot) advance();
        return Formula::quantifier(kind, std::string(v.text), unary());
      }
      default:
        return primary();
    }
  }

  Formula primary() {
    switch (cur_.kind) {
      case Tok::LParen: {
        advance();
        Formula f = formula();
        if (cur_.kind != Tok::RParen) fail({"')'", "'∧'", "'∨'", "'→'", "'↔'"});
        advance();
        return f;
      }
      case Tok::Top:
        advance();
        return Formula::top();
      case Tok::Bottom:
        advance();
        return Formula::bottom();
      case Tok::Ident: {
        Token id = cur_;
        if (is_variable_name(id.text))
          throw ParseError("E_SYNTAX",
                           "'" + std::string(id.text) + "' is a variable; expected a formula",
                           id.offset, kFormulaStart);
        advance();
        if (cur_.kind == Tok::LParen) return Formula::pred(std::string(id.text), arguments());
        return Formula::pred(std::string(id.text));
      }
      default:
        fail(kFormulaStart);
    }
  }

  std::vector<Term> arguments() {
    advance();  // '('
    std::vector<Term> args;
    args.push_back(term());
    while (cur_.kind == Tok::Comma) {
      advance();
      args.push_back(term());
    }
    if (cur_.kind != Tok::RParen) fail({"','", "')'"});
    advance();
    return args;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    std::string msg = "unexpected " + describe(cur_) + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError("E_SYNTAX", msg, cur_.offset, std::move(expected));
  }

  void advance() { cur_ = lex_.next(); }

  Lexer lex_;
  Token cur_;
};

}  // namespace

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.expect_end();
  return f;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.expect_end();
  return t;
}

}  // namespace ndproof
