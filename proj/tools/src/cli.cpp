#include "ndp/cli.hpp"

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "ndp/app.hpp"
#include "ndp/service.hpp"

namespace ndp {

using namespace ndproof;

namespace {

void print_parse_error(std::ostream& err, const std::string& source, const ParseError& e) {
  err << source;
  if (e.line()) err << ":" << e.line() << ":" << e.column();
  err << ": error[" << e.code() << "]: " << e.what() << "\n";
  if (!e.expected().empty()) {
    err << "  expected one of:";
    for (const auto& x : e.expected()) err << " " << x;
    err << "\n";
  }
}

std::optional<std::string> read_source(const std::string& path, std::ostream& err) {
  try {
    return read_file(path);
  } catch (const std::runtime_error& e) {
    err << "ndp: " << e.what() << "\n";
    return std::nullopt;
  }
}

void print_verdict(std::ostream& out, const Verdict& v) {
  if (v.valid()) {
    out << "no countermodel with domain size up to " << v.bound
        << " (a bounded search, not a proof of validity)\n";
    return;
  }
  out << "countermodel with domain size " << v.countermodel->domain_size << ":\n"
      << render_structure(*v.countermodel);
}

struct CheckArgs {
  std::string file;
  bool strict = false;
  bool json = false;
  int max_domain = 0;
};

int cmd_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  auto text = read_source(a.file, err);
  if (!text) return kExitIo;
  std::optional<ProofDocument> doc;
  try {
    doc = load_document(*text);
  } catch (const ParseError& e) {
    if (a.json) out << parse_error_to_json(e).dump(2) << "\n";
    print_parse_error(err, a.file, e);
    return kExitParse;
  }
  CheckConfig cfg;
  cfg.strict = a.strict;
  CheckOutcome outcome;
  try {
    outcome = run_check(*doc, cfg, a.max_domain > 0 ? std::optional<int>(a.max_domain) : std::nullopt);
  } catch (const ResourceError& e) {
    err << "ndp: " << e.what() << "\n";
    return kExitResource;
  }

  if (a.json) {
    out << outcome_json_text(outcome);
  } else {
    const auto& r = outcome.report;
    for (const auto& d : r.diagnostics) {
      out << a.file << ":" << d.line << ": " << (d.is_error() ? "error" : "warning") << "["
          << diag_code_name(d.code) << "]: " << d.message << "\n";
    }
    const auto errors = std::count_if(r.diagnostics.begin(), r.diagnostics.end(),
                                      [](const Diagnostic& d) { return d.is_error(); });
    if (r.accepted)
      out << "accepted: proves " << format_formula(*r.proved) << "\n";
    else
      out << "rejected: " << errors << (errors == 1 ? " error" : " errors") << "\n";
    if (outcome.soundness) print_verdict(out, *outcome.soundness);
  }
  return outcome.ok() ? kExitOk : kExitRejected;
}

struct CountermodelArgs {
  std::vector<std::string> premises;
  std::string conclusion;
  int max_domain = 3;
  unsigned workers = 1;
  bool json = false;
};

int cmd_countermodel(const CountermodelArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Formula> premises;
  std::optional<Formula> conclusion;
  try {
    for (const auto& p : a.premises) premises.push_back(parse_formula(p));
    conclusion = parse_formula(a.conclusion);
  } catch (const ParseError& e) {
    if (a.json) out << parse_error_to_json(e).dump(2) << "\n";
    print_parse_error(err, "formula", e);
    return kExitParse;
  }
  Verdict v;
  try {
    EntailOptions opts;
    opts.workers = a.workers;
    v = entails(premises, *conclusion, a.max_domain, opts);
  } catch (const ResourceError& e) {
    err << "ndp: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    err << "ndp: " << e.what() << "\n";
    return kExitParse;
  }
  if (a.json)
    out << verdict_to_json(v).dump(2) << "\n";
  else
    print_verdict(out, v);
  return v.valid() ? kExitOk : kExitRejected;
}

int cmd_fmt(const std::string& file, bool json, std::ostream& out, std::ostream& err) {
  auto text = read_source(file, err);
  if (!text) return kExitIo;
  try {
    ProofDocument doc = load_document(*text);
    if (json)
      out << document_to_json(doc).dump(2) << "\n";
    else
      out << format_proof(doc);
  } catch (const ParseError& e) {
    print_parse_error(err, file, e);
    return kExitParse;
  }
  return kExitOk;
}

int cmd_parse(const std::string& formula, bool json, std::ostream& out, std::ostream& err) {
  try {
    Formula f = parse_formula(formula);
    if (json)
      out << formula_to_json(f).dump(2) << "\n";
    else
      out << format_formula(f) << "\n";
  } catch (const ParseError& e) {
    if (json) out << parse_error_to_json(e).dump(2) << "\n";
    print_parse_error(err, "formula", e);
    // Caret under the offending character; the offset counts bytes.
    const auto prefix = std::string_view(formula).substr(0, std::min(e.offset(), formula.size()));
    const auto width = std::count_if(prefix.begin(), prefix.end(), [](char ch) { return (ch & 0xC0) != 0x80; });
    err << "  " << formula << "\n  " << std::string(static_cast<std::size_t>(width), ' ') << "^\n";
    return kExitParse;
  }
  return kExitOk;
}

int cmd_serve(const std::string& addr, int port, const std::string& corpus_dir, std::ostream& out,
              std::ostream& err) {
  std::optional<Corpus> corpus;
  try {
    corpus = Corpus::load(corpus_dir);
  } catch (const std::runtime_error& e) {
    err << "ndp: warning: no example corpus: " << e.what() << "\n";
  }
  Service service(std::move(corpus));
  HttpServer server(service);
  const int bound = server.bind(addr, port);
  if (bound < 0) {
    err << "ndp: cannot bind " << addr << ":" << port << "\n";
    return kExitIo;
  }
  out << "listening on http://" << addr << ":" << bound << "\n" << std::flush;
  server.listen();
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natural deduction proof checker for first-order logic", "ndp"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check a proof (.ndp text or v1 JSON)");
  c->add_option("file", check.file, "Proof file")->required();
  c->add_flag("--strict", check.strict, "Reject the derived rules QN, NegImp and IP");
  c->add_flag("--json", check.json, "Print the v1 JSON report");
  c->add_option("--max-domain", check.max_domain, "Also search for countermodels up to this domain size")
      ->check(CLI::PositiveNumber);

  CountermodelArgs cm;
  auto* m = app.add_subcommand("countermodel", "Search finite structures for a countermodel");
  m->add_option("--premise", cm.premises, "Premise sentence (repeatable)");
  m->add_option("--conclusion", cm.conclusion, "Conclusion sentence")->required();
  m->add_option("--max-domain", cm.max_domain, "Largest domain size to search")->check(CLI::PositiveNumber);
  m->add_option("--workers", cm.workers, "Worker threads")->check(CLI::PositiveNumber);
  m->add_flag("--json", cm.json, "Print the v1 JSON verdict");

  std::string fmt_file;
  bool fmt_json = false;
  auto* f = app.add_subcommand("fmt", "Print a proof in canonical form");
  f->add_option("file", fmt_file, "Proof file")->required();
  f->add_flag("--json", fmt_json, "Print the v1 document JSON");

  std::string formula;
  bool parse_json_out = false;
  auto* p = app.add_subcommand("parse", "Parse a formula and print it canonically");
  p->add_option("formula", formula, "Formula text")->required();
  p->add_flag("--json", parse_json_out, "Print the AST as JSON");

  std::string addr = "127.0.0.1";
  int port = 8080;
  std::string corpus_dir = default_corpus_dir().string();
  auto* s = app.add_subcommand("serve", "Serve the /v1 JSON API");
  s->add_option("--addr", addr, "Listen address");
  s->add_option("--port", port, "Listen port (0 picks a free port)");
  s->add_option("--corpus", corpus_dir, "Example corpus directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  if (*c) return cmd_check(check, out, err);
  if (*m) return cmd_countermodel(cm, out, err);
  if (*f) return cmd_fmt(fmt_file, fmt_json, out, err);
  if (*p) return cmd_parse(formula, parse_json_out, out, err);
  return cmd_serve(addr, port, corpus_dir, out, err);
}

}  // namespace ndp
