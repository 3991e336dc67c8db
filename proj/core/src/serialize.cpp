#include "ndproof/serialize.hpp"

#include <algorithm>
#include <initializer_list>

namespace ndproof {
namespace {

[[noreturn]] void bad(const std::string& msg) { throw ParseError("E_JSON", msg); }

void require_object(const Json& j, const char* what, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) bad(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      bad(std::string(what) + ": unknown field '" + key + "'");
  }
}

const Json& field(const Json& j, const char* what, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string(what) + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* what, const char* key) {
  const Json& v = field(j, what, key);
  if (!v.is_string()) bad(std::string(what) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

int int_field(const Json& j, const char* what, const char* key) {
  const Json& v = field(j, what, key);
  if (!v.is_number_integer()) bad(std::string(what) + ": field '" + key + "' must be an integer");
  return v.get<int>();
}

void require_version(const Json& j, const char* what) {
  auto it = j.find("version");
  if (it == j.end()) return;
  if (!it->is_string() || it->get<std::string>() != kSchemaVersion)
    bad(std::string(what) + ": unsupported version " + it->dump() + ", expected \"v1\"");
}

Formula formula_text(const std::string& text, const std::string& where) {
  try {
    return parse_formula(text);
  } catch (const ParseError& e) {
    throw ParseError(e.code(), where + ": " + e.what(), e.offset(), e.expected());
  }
}

struct KindName {
  Formula::Kind kind;
  std::string_view name;
};

constexpr KindName kKinds[] = {
    {Formula::Kind::Top, "top"},     {Formula::Kind::Bottom, "bottom"}, {Formula::Kind::Pred, "pred"},
    {Formula::Kind::Not, "not"},     {Formula::Kind::And, "and"},       {Formula::Kind::Or, "or"},
    {Formula::Kind::Imp, "imp"},     {Formula::Kind::Iff, "iff"},       {Formula::Kind::Forall, "forall"},
    {Formula::Kind::Exists, "exists"},
};

std::string_view kind_name(Formula::Kind k) {
  for (const auto& e : kKinds)
    if (e.kind == k) return e.name;
  return "top";
}

}  // namespace

// ---------- Terms and formulas ----------

Json term_to_json(const Term& t) {
  Json j;
  switch (t.kind()) {
    case Term::Kind::Var:
      j["kind"] = "var";
      break;
    case Term::Kind::Const:
      j["kind"] = "const";
      break;
    case Term::Kind::App:
      j["kind"] = "app";
      break;
  }
  j["name"] = t.name();
  if (t.is_app()) {
    j["args"] = Json::array();
    for (const auto& a : t.args()) j["args"].push_back(term_to_json(a));
  }
  return j;
}

Term term_from_json(const Json& j) {
  if (!j.is_object()) bad("term must be a JSON object");
  const std::string kind = string_field(j, "term", "kind");
  if (kind == "app") {
    require_object(j, "term", {"kind", "name", "args"});
    const Json& args = field(j, "term", "args");
    if (!args.is_array() || args.empty()) bad("term: 'args' must be a non-empty array");
    std::vector<Term> out;
    for (const auto& a : args) out.push_back(term_from_json(a));
    const std::string name = string_field(j, "term", "name");
    if (!is_identifier(name) || is_variable_name(name)) bad("term: bad function name '" + name + "'");
    return Term::app(name, std::move(out));
  }
  require_object(j, "term", {"kind", "name"});
  const std::string name = string_field(j, "term", "name");
  if (!is_identifier(name)) bad("term: bad name '" + name + "'");
  if (kind == "var") {
    if (!is_variable_name(name)) bad("term: '" + name + "' is not a variable name");
    return Term::var(name);
  }
  if (kind == "const") {
    if (is_variable_name(name)) bad("term: '" + name + "' is a variable name");
    return Term::constant(name);
  }
  bad("term: unknown kind '" + kind + "'");
}

Json formula_to_json(const Formula& f) {
  Json j;
  j["kind"] = kind_name(f.kind());
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Bottom:
      break;
    case Formula::Kind::Pred:
      j["name"] = f.name();
      j["args"] = Json::array();
      for (const auto& t : f.args()) j["args"].push_back(term_to_json(t));
      break;
    case Formula::Kind::Not:
      j["operand"] = formula_to_json(f.operand());
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      j["var"] = f.var();
      j["body"] = formula_to_json(f.body());
      break;
    default:
      j["left"] = formula_to_json(f.lhs());
      j["right"] = formula_to_json(f.rhs());
  }
  return j;
}

Formula formula_from_json(const Json& j) {
  if (!j.is_object()) bad("formula must be a JSON object");
  const std::string kind = string_field(j, "formula", "kind");
  auto k = std::find_if(std::begin(kKinds), std::end(kKinds), [&](const KindName& e) { return e.name == kind; });
  if (k == std::end(kKinds)) bad("formula: unknown kind '" + kind + "'");
  switch (k->kind) {
    case Formula::Kind::Top:
      require_object(j, "formula", {"kind"});
      return Formula::top();
    case Formula::Kind::Bottom:
      require_object(j, "formula", {"kind"});
      return Formula::bottom();
    case Formula::Kind::Pred: {
      require_object(j, "formula", {"kind", "name", "args"});
      const std::string name = string_field(j, "formula", "name");
      if (!is_identifier(name) || is_variable_name(name)) bad("formula: bad predicate name '" + name + "'");
      std::vector<Term> args;
      if (auto it = j.find("args"); it != j.end()) {
        if (!it->is_array()) bad("formula: 'args' must be an array");
        for (const auto& a : *it) args.push_back(term_from_json(a));
      }
      return Formula::pred(name, std::move(args));
    }
    case Formula::Kind::Not:
      require_object(j, "formula", {"kind", "operand"});
      return Formula::negation(formula_from_json(field(j, "formula", "operand")));
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      require_object(j, "formula", {"kind", "var", "body"});
      const std::string var = string_field(j, "formula", "var");
      if (!is_variable_name(var)) bad("formula: '" + var + "' is not a variable name");
      return Formula::quantifier(k->kind, var, formula_from_json(field(j, "formula", "body")));
    }
    default:
      require_object(j, "formula", {"kind", "left", "right"});
      return Formula::binary(k->kind, formula_from_json(field(j, "formula", "left")),
                             formula_from_json(field(j, "formula", "right")));
  }
}

// ---------- Documents ----------

Json document_to_json(const ProofDocument& doc) {
  Json j;
  j["version"] = kSchemaVersion;
  j["name"] = doc.name();
  j["declared_goal"] = doc.declared_goal() ? Json(format_formula(*doc.declared_goal())) : Json(nullptr);
  j["lines"] = Json::array();
  for (const auto& l : doc.lines()) {
    Json line;
    line["number"] = l.number;
    line["depth"] = l.depth;
    line["kind"] = line_kind_name(l.kind);
    if (l.formula) line["formula"] = format_formula(*l.formula);
    if (l.constant) line["constant"] = *l.constant;
    if (l.justification) {
      const auto& just = *l.justification;
      Json cited = Json::array();
      for (const auto& c : just.cited) cited.push_back(c.range ? Json::array({c.first, c.last}) : Json(c.first));
      line["justification"] = {
          {"rule", just.rule == Rule::Unknown ? just.label : std::string(rule_name(just.rule))},
          {"cited", std::move(cited)}};
    }
    j["lines"].push_back(std::move(line));
  }
  return j;
}

ProofDocument document_from_json(const Json& j) {
  require_object(j, "document", {"version", "name", "declared_goal", "lines"});
  require_version(j, "document");
  std::string name;
  if (auto it = j.find("name"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) bad("document: 'name' must be a string");
    name = it->get<std::string>();
  }
  std::optional<Formula> goal;
  if (auto it = j.find("declared_goal"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) bad("document: 'declared_goal' must be a formula string");
    goal = formula_text(it->get<std::string>(), "declared_goal");
  }
  const Json& lines = field(j, "document", "lines");
  if (!lines.is_array()) bad("document: 'lines' must be an array");

  std::vector<ProofLine> out;
  for (const auto& lj : lines) {
    require_object(lj, "line", {"number", "depth", "kind", "formula", "constant", "justification"});
    ProofLine l;
    l.number = int_field(lj, "line", "number");
    const std::string where = "line " + std::to_string(l.number);
    l.depth = lj.contains("depth") ? int_field(lj, "line", "depth") : 0;
    const std::string kind = string_field(lj, "line", "kind");
    if (kind == "premise") {
      l.kind = LineKind::Premise;
    } else if (kind == "assumption") {
      l.kind = LineKind::Assumption;
    } else if (kind == "derived") {
      l.kind = LineKind::Derived;
    } else if (kind == "boxed-constant") {
      l.kind = LineKind::BoxedConstant;
    } else {
      bad(where + ": unknown line kind '" + kind + "'");
    }
    if (auto it = lj.find("formula"); it != lj.end() && !it->is_null()) {
      if (!it->is_string()) bad(where + ": 'formula' must be a string");
      l.formula = formula_text(it->get<std::string>(), where);
    }
    if (auto it = lj.find("constant"); it != lj.end() && !it->is_null()) {
      if (!it->is_string()) bad(where + ": 'constant' must be a string");
      l.constant = it->get<std::string>();
    }
    if (auto it = lj.find("justification"); it != lj.end() && !it->is_null()) {
      require_object(*it, "justification", {"rule", "cited"});
      Justification just;
      just.label = string_field(*it, "justification", "rule");
      just.rule = parse_rule_name(just.label);
      if (auto c = it->find("cited"); c != it->end()) {
        if (!c->is_array()) bad(where + ": 'cited' must be an array");
        for (const auto& cj : *c) {
          if (cj.is_number_integer()) {
            just.cited.push_back(Citation::line(cj.get<int>()));
          } else if (cj.is_array() && cj.size() == 2 && cj[0].is_number_integer() && cj[1].is_number_integer()) {
            just.cited.push_back(Citation::span(cj[0].get<int>(), cj[1].get<int>()));
          } else {
            bad(where + ": a citation is a line number or a [first, last] pair");
          }
        }
      }
      l.justification = std::move(just);
    }
    out.push_back(std::move(l));
  }
  return ProofDocument::create(std::move(name), std::move(goal), std::move(out));
}

// ---------- Reports ----------

Json diagnostic_to_json(const Diagnostic& d) {
  return Json{{"line", d.line},
              {"code", diag_code_name(d.code)},
              {"severity", d.is_error() ? "error" : "warning"},
              {"message", d.message},
              {"related", d.related}};
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["version"] = kSchemaVersion;
  j["accepted"] = r.accepted;
  j["proved"] = r.proved ? Json(format_formula(*r.proved)) : Json(nullptr);
  j["diagnostics"] = Json::array();
  for (const auto& d : r.diagnostics) j["diagnostics"].push_back(diagnostic_to_json(d));
  return j;
}

std::string report_json_text(const CheckReport& r) { return report_to_json(r).dump(2) + "\n"; }

// ---------- Structures ----------

Json structure_to_json(const Structure& s) {
  Json j;
  j["domain_size"] = s.domain_size;
  j["constants"] = Json::object();
  for (const auto& [c, v] : s.constants) j["constants"][c] = v;
  j["functions"] = Json::object();
  for (const auto& [f, table] : s.functions) {
    Json rows = Json::array();
    for (const auto& [args, v] : table) rows.push_back({{"args", args}, {"value", v}});
    j["functions"][f] = std::move(rows);
  }
  j["predicates"] = Json::object();
  for (const auto& [p, ext] : s.predicates) {
    Json rows = Json::array();
    for (const auto& t : ext) rows.push_back(t);
    j["predicates"][p] = std::move(rows);
  }
  return j;
}

Structure structure_from_json(const Json& j) {
  require_object(j, "structure", {"domain_size", "constants", "functions", "predicates"});
  Structure s;
  s.domain_size = int_field(j, "structure", "domain_size");
  if (s.domain_size < 1) bad("structure: domain_size must be at least 1");
  auto element = [&](const Json& v) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= s.domain_size)
      bad("structure: " + v.dump() + " is not a domain element");
    return v.get<int>();
  };
  auto tuple = [&](const Json& v) {
    if (!v.is_array()) bad("structure: argument tuples must be arrays");
    std::vector<int> t;
    for (const auto& e : v) t.push_back(element(e));
    return t;
  };
  if (auto it = j.find("constants"); it != j.end()) {
    if (!it->is_object()) bad("structure: 'constants' must be an object");
    for (const auto& [c, v] : it->items()) s.constants[c] = element(v);
  }
  if (auto it = j.find("functions"); it != j.end()) {
    if (!it->is_object()) bad("structure: 'functions' must be an object");
    for (const auto& [f, rows] : it->items()) {
      auto& table = s.functions[f];
      if (!rows.is_array()) bad("structure: function table must be an array");
      for (const auto& row : rows) {
        require_object(row, "function row", {"args", "value"});
        table[tuple(field(row, "function row", "args"))] = element(field(row, "function row", "value"));
      }
    }
  }
  if (auto it = j.find("predicates"); it != j.end()) {
    if (!it->is_object()) bad("structure: 'predicates' must be an object");
    for (const auto& [p, rows] : it->items()) {
      auto& ext = s.predicates[p];
      if (!rows.is_array()) bad("structure: predicate extension must be an array");
      for (const auto& row : rows) ext.insert(tuple(row));
    }
  }
  return s;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["version"] = kSchemaVersion;
  j["result"] = v.valid() ? "valid_up_to" : "countermodel";
  j["bound"] = v.bound;
  j["countermodel"] = v.countermodel ? structure_to_json(*v.countermodel) : Json(nullptr);
  return j;
}

Json parse_error_to_json(const ParseError& e) {
  Json j;
  j["version"] = kSchemaVersion;
  j["error"] = {{"code", e.code()}, {"message", e.what()}, {"offset", e.offset()}, {"expected", e.expected()}};
  if (e.line()) {
    j["error"]["line"] = e.line();
    j["error"]["column"] = e.column();
  }
  return j;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("E_JSON", std::string("malformed JSON: ") + e.what(), e.byte ? e.byte - 1 : 0);
  }
}

}  // namespace ndproof
