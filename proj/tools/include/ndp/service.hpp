#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include <ndproof/corpus.hpp>

namespace ndp {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline constexpr std::size_t kMaxBodyBytes = 1 << 20;

/// The /v1 JSON API as a pure request handler. Holds only the read-only
/// example corpus, so concurrent calls are safe.
class Service {
 public:
  explicit Service(std::optional<ndproof::Corpus> corpus = std::nullopt) : corpus_(std::move(corpus)) {}

  HttpResponse handle(const HttpRequest& req) const;

 private:
  HttpResponse parse(const std::string& body) const;
  HttpResponse check(const std::string& body) const;
  HttpResponse countermodel(const std::string& body) const;
  HttpResponse examples() const;
  HttpResponse example(const std::string& id) const;

  std::optional<ndproof::Corpus> corpus_;
};

/// HTTP transport for a Service, with CORS headers and the body size cap.
class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds addr:port (port 0 picks a free one). Returns the bound port, or
  /// -1 on failure.
  int bind(const std::string& addr, int port);
  /// Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Compiled-in location of the example corpus.
std::filesystem::path default_corpus_dir();

}  // namespace ndp
