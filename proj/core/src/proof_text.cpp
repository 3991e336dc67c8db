#include <cctype>
#include <charconv>
#include <map>

#include "ndproof/proofdoc.hpp"

namespace ndproof {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Byte column (1-based) of `part` inside `line`; both views share storage.
std::size_t column_of(std::string_view line, std::string_view part) {
  return static_cast<std::size_t>(part.data() - line.data()) + 1;
}

[[noreturn]] void fail(const char* code, std::string msg, std::size_t line, std::size_t column) {
  ParseError e(code, std::move(msg));
  e.at_line(line, column);
  throw e;
}

Formula formula_at(std::string_view text, std::string_view line, std::size_t lineno) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    ParseError located(e.code(), e.what(), e.offset(), e.expected());
    located.at_line(lineno, column_of(line, text) + e.offset());
    throw located;
  }
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 1) return std::nullopt;
  return v;
}

std::vector<Citation> parse_citations(std::string_view text, std::string_view line, std::size_t lineno) {
  std::vector<Citation> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    std::optional<Citation> c;
    if (auto dash = tok.find('-'); dash != std::string_view::npos) {
      auto a = to_int(tok.substr(0, dash));
      auto b = to_int(tok.substr(dash + 1));
      if (a && b) c = Citation::span(*a, *b);
    } else if (auto n = to_int(tok)) {
      c = Citation::line(*n);
    }
    if (!c)
      fail("E_SYNTAX", "bad citation '" + std::string(tok) + "', expected a line number or a range i-j",
           lineno, column_of(line, tok));
    out.push_back(*c);
    i = j;
  }
  return out;
}

bool is_premise_label(std::string_view s) { return s == "premise" || s == "Premise"; }

bool is_assumption_label(std::string_view s) {
  return s == "assume" || s == "Assume" || s == "assumption" || s == "Assumption";
}

struct RawLine {
  ProofLine line;
  std::size_t text_line;
};

RawLine parse_numbered(std::string_view line, std::string_view body, std::size_t lineno) {
  RawLine raw;
  raw.text_line = lineno;
  ProofLine& pl = raw.line;

  std::size_t i = 0;
  while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
  auto number = to_int(body.substr(0, i));
  if (!number || i >= body.size() || body[i] != '.')
    fail("E_SYNTAX", "expected '<number>.' at start of proof line", lineno, column_of(line, body));
  pl.number = *number;
  body.remove_prefix(i + 1);

  for (;;) {
    body = trim(body);
    if (body.empty() || body.front() != '|') break;
    ++pl.depth;
    body.remove_prefix(1);
  }

  const auto semi = body.find(';');
  if (semi == std::string_view::npos)
    fail("E_SYNTAX", "expected ';' followed by a justification", lineno, column_of(line, body) + body.size());
  std::string_view content = trim(body.substr(0, semi));
  std::string_view just = trim(body.substr(semi + 1));

  if (!content.empty() && content.front() == '[') {
    const auto close = content.find(']');
    if (close == std::string_view::npos)
      fail("E_SYNTAX", "unterminated boxed constant, expected ']'", lineno, column_of(line, content));
    std::string_view name = trim(content.substr(1, close - 1));
    if (!is_identifier(name) || is_variable_name(name))
      fail("E_SYNTAX", "boxed opener needs a constant name, found '" + std::string(name) + "'", lineno,
           column_of(line, content) + 1);
    pl.kind = LineKind::BoxedConstant;
    pl.constant = std::string(name);
    std::string_view rest = trim(content.substr(close + 1));
    if (!rest.empty()) pl.formula = formula_at(rest, line, lineno);
  } else {
    if (content.empty()) fail("E_SYNTAX", "missing formula", lineno, column_of(line, body));
    pl.formula = formula_at(content, line, lineno);
  }

  std::size_t k = 0;
  while (k < just.size() && just[k] != ',' && !std::isspace(static_cast<unsigned char>(just[k]))) ++k;
  std::string_view label = just.substr(0, k);
  std::string_view rest = just.substr(k);
  if (label.empty()) fail("E_SYNTAX", "missing justification after ';'", lineno, column_of(line, body) + semi + 1);

  const bool boxed = pl.kind == LineKind::BoxedConstant;
  if (is_premise_label(label) || is_assumption_label(label)) {
    if (!trim(rest).empty())
      fail("E_SYNTAX", "premises and assumptions take no citations", lineno, column_of(line, trim(rest)));
    if (is_premise_label(label)) {
      if (boxed) fail("E_STRUCTURE", "a boxed constant cannot be a premise", lineno, column_of(line, label));
      pl.kind = LineKind::Premise;
    } else if (!boxed) {
      pl.kind = LineKind::Assumption;
    }
    return raw;
  }
  if (boxed) fail("E_STRUCTURE", "a boxed opener must be justified as 'assume'", lineno, column_of(line, label));

  Rule rule = parse_rule_name(label);
  if (rule == Rule::Unknown)
    fail("E_UNKNOWN_RULE", "unknown rule '" + std::string(label) + "'", lineno, column_of(line, label));
  pl.kind = LineKind::Derived;
  pl.justification = Justification{rule, std::string(label), parse_citations(rest, line, lineno)};
  return raw;
}

}  // namespace

ProofDocument parse_proof(std::string_view text) {
  std::string name;
  std::optional<Formula> goal;
  std::vector<RawLine> raw;

  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(body.front()))) {
      raw.push_back(parse_numbered(line, body, lineno));
    } else if (raw.empty() && body.substr(0, 5) == "name:") {
      name = std::string(trim(body.substr(5)));
    } else if (raw.empty() && body.substr(0, 5) == "goal:") {
      goal = formula_at(trim(body.substr(5)), line, lineno);
    } else {
      fail("E_SYNTAX", "expected a numbered proof line", lineno, column_of(line, body));
    }
    if (end == text.size()) break;
  }

  std::vector<ProofLine> lines;
  lines.reserve(raw.size());
  for (auto& r : raw) lines.push_back(std::move(r.line));
  try {
    return ProofDocument::create(std::move(name), std::move(goal), std::move(lines));
  } catch (const ParseError& e) {
    // Map the proof line number back to the file line it came from.
    if (e.line() >= 1 && e.line() <= raw.size()) {
      ParseError located(e.code(), e.what(), e.offset(), e.expected());
      located.at_line(raw[e.line() - 1].text_line, 1);
      throw located;
    }
    throw;
  }
}

std::string format_proof(const ProofDocument& doc) {
  std::string out;
  if (!doc.name().empty()) out += "name: " + doc.name() + "\n";
  if (doc.declared_goal()) out += "goal: " + format_formula(*doc.declared_goal()) + "\n";
  if (!out.empty() && !doc.lines().empty()) out += "\n";
  for (const auto& l : doc.lines()) {
    out += std::to_string(l.number) + ".";
    for (int d = 0; d < l.depth; ++d) out += " |";
    out += ' ';
    if (l.kind == LineKind::BoxedConstant) {
      out += "[" + *l.constant + "]";
      if (l.formula) out += " " + format_formula(*l.formula);
    } else {
      out += format_formula(*l.formula);
    }
    out += " ; ";
    switch (l.kind) {
      case LineKind::Premise:
        out += "premise";
        break;
      case LineKind::Assumption:
      case LineKind::BoxedConstant:
        out += "assume";
        break;
      case LineKind::Derived: {
        const auto& j = *l.justification;
        out += j.rule == Rule::Unknown ? j.label : std::string(rule_name(j.rule));
        for (std::size_t i = 0; i < j.cited.size(); ++i) out += (i ? ", " : " ") + j.cited[i].to_string();
        break;
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace ndproof
