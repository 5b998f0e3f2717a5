#pragma once

#include <cstddef>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace bubbledyn {

struct HttpRequest {
  std::string path;
  std::map<std::string, std::string> query;
  std::string if_none_match;
};

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
  std::map<std::string, std::string> headers;
};

// Bounded least-recently-used map from canonical URL to response body.
// Inserts never replace an existing entry, so a cached body never changes.
class TileCache {
 public:
  explicit TileCache(std::size_t capacity) : capacity_(capacity) {}

  std::optional<std::string> get(const std::string& key);
  // Returns the body now stored under key (the earlier one if present).
  std::string insert(const std::string& key, std::string body);
  std::size_t size() const;

 private:
  using Entry = std::pair<std::string, std::string>;
  std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> order_;  // front = most recent
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

struct ServiceOptions {
  std::size_t cache_capacity = 512;
  // Workers per tile render; 0 = default worker count.
  unsigned render_workers = 0;
};

// Stateless request handler for the explorer API. Routes:
//   GET /api/classify?n=&re=&im=&budget=
//   GET /api/orbit?n=&re=&im=&seed=v0|v1|custom&zre=&zim=&max=&budget=
//   GET /api/examples
//   GET /tiles/{param|julia}/{n}/{zoom}/{tx}/{ty}.png?re=&im=&budget=
// Errors are JSON {error, detail}.
class TileService {
 public:
  explicit TileService(ServiceOptions options = {});

  HttpResponse handle(const HttpRequest& request);
  std::size_t cached_tiles() const { return cache_.size(); }

 private:
  HttpResponse tile(const HttpRequest& request);

  ServiceOptions options_;
  TileCache cache_;
};

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

// HTTP/1.1 front end over a TileService.
class HttpServer {
 public:
  explicit HttpServer(TileService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 binds an ephemeral port. Returns the bound port; throws
  // std::runtime_error on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called from another thread.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bubbledyn
