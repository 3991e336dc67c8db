#include "ndp/service.hpp"

#include <httplib.h>

#include "ndp/app.hpp"

namespace ndp {

using namespace ndproof;

namespace {

HttpResponse json_response(int status, const Json& j) { return {status, j.dump(2) + "\n", "application/json"}; }

HttpResponse error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, error_json(code, message));
}

HttpResponse parse_error_response(const ParseError& e) { return json_response(400, parse_error_to_json(e)); }

bool looks_like_json(const std::string& body) {
  for (char c : body) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

void require_fields(const Json& j, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ParseError("E_JSON", "request body must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("E_JSON", "unknown field '" + key + "'");
  }
  if (auto v = j.find("version"); v != j.end() && (!v->is_string() || v->get<std::string>() != kSchemaVersion))
    throw ParseError("E_JSON", "unsupported version " + v->dump() + ", expected \"v1\"");
}

std::string string_of(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) throw ParseError("E_JSON", std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

HttpResponse Service::handle(const HttpRequest& req) const {
  if (req.body.size() > kMaxBodyBytes) return error_response(413, "E_TOO_LARGE", "request body exceeds 1 MB");
  if (req.method == "OPTIONS") return {204, "", "text/plain"};

  const std::string& path = req.path;
  static const std::string kExamples = "/v1/examples";
  const bool post = req.method == "POST";
  const bool get = req.method == "GET";
  try {
    if (path == "/v1/parse") return post ? parse(req.body) : error_response(405, "E_METHOD", "use POST");
    if (path == "/v1/check") return post ? check(req.body) : error_response(405, "E_METHOD", "use POST");
    if (path == "/v1/countermodel")
      return post ? countermodel(req.body) : error_response(405, "E_METHOD", "use POST");
    if (path == kExamples) return get ? examples() : error_response(405, "E_METHOD", "use GET");
    if (path.rfind(kExamples + "/", 0) == 0)
      return get ? example(path.substr(kExamples.size() + 1)) : error_response(405, "E_METHOD", "use GET");
  } catch (const ParseError& e) {
    return parse_error_response(e);
  } catch (const SignatureError& e) {
    return error_response(400, "E_SIGNATURE", e.what());
  } catch (const ResourceError& e) {
    return error_response(422, "E_RESOURCE", e.what());
  } catch (const std::invalid_argument& e) {
    return error_response(400, "E_INVALID", e.what());
  }
  return error_response(404, "E_NOT_FOUND", "no such endpoint: " + path);
}

HttpResponse Service::parse(const std::string& body) const {
  std::string text = body;
  if (looks_like_json(body)) {
    Json j = parse_json(body);
    require_fields(j, {"version", "text"});
    text = string_of(j, "text");
  }
  Formula f = parse_formula(text);
  return json_response(200, Json{{"version", kSchemaVersion}, {"formula", format_formula(f)}, {"ast", formula_to_json(f)}});
}

HttpResponse Service::check(const std::string& body) const {
  CheckConfig cfg;
  std::optional<int> max_domain;
  std::optional<ProofDocument> doc;
  if (!looks_like_json(body)) {
    doc = parse_proof(body);
  } else {
    Json j = parse_json(body);
    if (j.is_object() && j.contains("lines")) {
      doc = document_from_json(j);
    } else {
      require_fields(j, {"version", "document", "text", "config"});
      if (j.contains("document") == j.contains("text"))
        throw ParseError("E_JSON", "give exactly one of 'document' and 'text'");
      doc = j.contains("document") ? document_from_json(j["document"]) : parse_proof(string_of(j, "text"));
      if (auto c = j.find("config"); c != j.end()) {
        if (!c->is_object()) throw ParseError("E_JSON", "'config' must be an object");
        for (const auto& [key, value] : c->items()) {
          if (key == "strict" && value.is_boolean()) {
            cfg.strict = value.get<bool>();
          } else if (key == "alpha_matching" && value.is_boolean()) {
            cfg.alpha_matching = value.get<bool>();
          } else if (key == "max_domain" && value.is_number_integer() && value.get<int>() >= 1) {
            max_domain = value.get<int>();
          } else {
            throw ParseError("E_JSON", "bad config field '" + key + "'");
          }
        }
      }
    }
  }
  return {200, outcome_json_text(run_check(*doc, cfg, max_domain)), "application/json"};
}

HttpResponse Service::countermodel(const std::string& body) const {
  Json j = parse_json(body);
  require_fields(j, {"version", "premises", "conclusion", "max_domain"});
  std::vector<Formula> premises;
  if (auto p = j.find("premises"); p != j.end()) {
    if (!p->is_array()) throw ParseError("E_JSON", "'premises' must be an array of formula strings");
    for (const auto& f : *p) {
      if (!f.is_string()) throw ParseError("E_JSON", "'premises' must be an array of formula strings");
      premises.push_back(parse_formula(f.get<std::string>()));
    }
  }
  Formula conclusion = parse_formula(string_of(j, "conclusion"));
  int max_domain = 3;
  if (auto m = j.find("max_domain"); m != j.end()) {
    if (!m->is_number_integer() || m->get<int>() < 1)
      throw ParseError("E_JSON", "'max_domain' must be a positive integer");
    max_domain = m->get<int>();
  }
  return json_response(200, verdict_to_json(entails(premises, conclusion, max_domain)));
}

HttpResponse Service::examples() const {
  Json list = Json::array();
  if (corpus_) {
    for (const auto& e : corpus_->entries())
      list.push_back({{"id", e.id}, {"title", e.title}, {"description", e.description}, {"accepted", e.accepted}});
  }
  return json_response(200, Json{{"version", kSchemaVersion}, {"examples", std::move(list)}});
}

HttpResponse Service::example(const std::string& id) const {
  const CorpusEntry* e = corpus_ ? corpus_->find(id) : nullptr;
  if (!e) return error_response(404, "E_NOT_FOUND", "no example named '" + id + "'");
  std::string text;
  try {
    text = corpus_->text(*e);
  } catch (const std::runtime_error& err) {
    return error_response(500, "E_IO", err.what());
  }
  return json_response(200, Json{{"version", kSchemaVersion},
                                 {"id", e->id},
                                 {"title", e->title},
                                 {"text", text},
                                 {"document", document_to_json(parse_proof(text))}});
}

// ---------- Transport ----------

struct HttpServer::Impl {
  explicit Impl(const Service& s) : service(s) {}
  const Service& service;
  httplib::Server server;
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto& srv = impl_->server;
  srv.set_payload_max_length(kMaxBodyBytes);
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto forward = [this](const httplib::Request& req, httplib::Response& res) {
    HttpResponse r = impl_->service.handle({req.method, req.path, req.body});
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Get(".*", forward);
  srv.Post(".*", forward);
  srv.Options(".*", forward);
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& addr, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(addr);
  return impl_->server.bind_to_port(addr, port) ? port : -1;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

std::filesystem::path default_corpus_dir() { return NDPROOF_CORPUS_DIR; }

}  // namespace ndp
