#include "bubbledyn/tile_service.hpp"

#include <httplib.h>
#include <openssl/evp.h>

#include <regex>
#include <stdexcept>

#include "bubbledyn/classifier.hpp"
#include "bubbledyn/complex_parse.hpp"
#include "bubbledyn/json_io.hpp"
#include "bubbledyn/reference_examples.hpp"
#include "bubbledyn/renderer.hpp"

namespace bubbledyn {

namespace {

using nlohmann::json;

constexpr int kMaxBudget = 1'000'000;
constexpr int kMaxTileBudget = 100'000;
constexpr int kDefaultTraceLength = 100;
constexpr int kMaxTraceLength = 10'000;
constexpr int kMaxZoom = 40;

// Thrown by the query helpers; carries the HTTP status.
struct RequestError {
  int status;
  std::string error;
  std::string detail;
};

HttpResponse json_response(int status, const json& body) {
  HttpResponse r;
  r.status = status;
  r.content_type = "application/json";
  r.body = body.dump();
  return r;
}

HttpResponse error_response(const RequestError& e) {
  return json_response(e.status, {{"error", e.error}, {"detail", e.detail}});
}

const std::string* find(const HttpRequest& req, const std::string& key) {
  const auto it = req.query.find(key);
  return it == req.query.end() ? nullptr : &it->second;
}

double number(const HttpRequest& req, const std::string& key, std::optional<double> fallback = std::nullopt) {
  const std::string* raw = find(req, key);
  if (!raw) {
    if (fallback) return *fallback;
    throw RequestError{400, "missing_parameter", "query parameter '" + key + "' is required"};
  }
  const auto v = parse_double(*raw);
  if (!v) throw RequestError{422, "unparsable_number", "'" + key + "' is not a number: " + *raw};
  return *v;
}

int integer(const HttpRequest& req, const std::string& key, std::optional<int> fallback = std::nullopt) {
  const std::string* raw = find(req, key);
  if (!raw) {
    if (fallback) return *fallback;
    throw RequestError{400, "missing_parameter", "query parameter '" + key + "' is required"};
  }
  const auto v = parse_int(*raw);
  if (!v) throw RequestError{422, "unparsable_number", "'" + key + "' is not an integer: " + *raw};
  return *v;
}

void check_range(int value, int lo, int hi, const std::string& what) {
  if (value < lo || value > hi)
    throw RequestError{400, "out_of_range",
                       what + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                           std::to_string(value)};
}

MapParams params_from(int n, Complex lambda) {
  if (n < 2) throw RequestError{400, "invalid_degree", "n must be >= 2"};
  if (n > 64) throw RequestError{400, "invalid_degree", "n must be <= 64"};
  if (lambda == Complex{0.0, 0.0}) throw RequestError{400, "invalid_lambda", "lambda must be nonzero"};
  return MapParams(n, lambda);
}

MapParams params_from_query(const HttpRequest& req) {
  const int n = integer(req, "n");
  const double re = number(req, "re");
  const double im = number(req, "im");
  return params_from(n, {re, im});
}

HttpResponse classify_route(const HttpRequest& req) {
  const MapParams params = params_from_query(req);
  const int budget = integer(req, "budget", kDefaultClassifyBudget);
  check_range(budget, 100, kMaxBudget, "budget");
  return json_response(200, classification_json(params, classify(params, budget)));
}

HttpResponse orbit_route(const HttpRequest& req) {
  const MapParams params = params_from_query(req);
  const int budget = integer(req, "budget", kDefaultClassifyBudget);
  check_range(budget, 1, kMaxBudget, "budget");
  const int max_points = integer(req, "max", kDefaultTraceLength);
  check_range(max_points, 0, kMaxTraceLength, "max");

  const std::string* seed_name = find(req, "seed");
  const std::string seed_kind = seed_name ? *seed_name : "v1";
  Complex seed;
  if (seed_kind == "v0") {
    seed = params.v0();
  } else if (seed_kind == "v1") {
    seed = params.v1();
  } else if (seed_kind == "custom") {
    seed = {number(req, "zre"), number(req, "zim")};
  } else {
    throw RequestError{400, "invalid_seed", "seed must be v0, v1 or custom"};
  }

  const auto trap = params.experimental() ? std::nullopt : trap_disk(params, kTrapKappa);
  const OrbitResult orbit = iterate_orbit(params, SpherePoint::finite(seed), budget, trap, max_points);
  json body = orbit_json(orbit);
  body["seed"] = seed_kind;
  body["n"] = params.n();
  body["lambda"] = complex_json(params.lambda());
  return json_response(200, body);
}

HttpResponse examples_route() {
  json rows = json::array();
  for (const ReferenceExample& ex : reference_examples()) {
    rows.push_back({{"name", ex.name},
                    {"label", ex.label},
                    {"n", ex.n},
                    {"re", ex.lambda.real()},
                    {"im", ex.lambda.imag()},
                    {"kind", std::string(to_string(ex.kind))},
                    {"subcase", std::string(to_string(ex.subcase))}});
  }
  return json_response(200, rows);
}

std::string canonical_url(const HttpRequest& req) {
  std::string url = req.path;
  char sep = '?';
  for (const auto& [k, v] : req.query) {  // std::map iterates in key order
    url += sep + k + "=" + v;
    sep = '&';
  }
  return url;
}

}  // namespace

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr))
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::optional<std::string> TileCache::get(const std::string& key) {
  std::lock_guard lock(mutex_);
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  order_.splice(order_.begin(), order_, it->second);
  return it->second->second;
}

std::string TileCache::insert(const std::string& key, std::string body) {
  std::lock_guard lock(mutex_);
  if (const auto it = index_.find(key); it != index_.end()) {
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
  }
  if (capacity_ == 0) return body;
  order_.emplace_front(key, std::move(body));
  index_[key] = order_.begin();
  while (order_.size() > capacity_) {
    index_.erase(order_.back().first);
    order_.pop_back();
  }
  return order_.front().second;
}

std::size_t TileCache::size() const {
  std::lock_guard lock(mutex_);
  return order_.size();
}

TileService::TileService(ServiceOptions options) : options_(options), cache_(options.cache_capacity) {}

HttpResponse TileService::tile(const HttpRequest& req) {
  static const std::regex route(R"(^/tiles/([a-z]+)/(-?\d+)/(-?\d+)/(-?\d+)/(-?\d+)\.png$)");
  std::smatch m;
  if (!std::regex_match(req.path, m, route))
    throw RequestError{404, "not_found", "no tile route matches " + req.path};

  const auto plane = parse_plane(m[1].str());
  if (!plane) throw RequestError{404, "not_found", "unknown plane '" + m[1].str() + "'"};
  const auto n = parse_int(m[2].str());
  const auto zoom = parse_int(m[3].str());
  const auto tx = parse_int(m[4].str());
  const auto ty = parse_int(m[5].str());
  if (!n || !zoom || !tx || !ty) throw RequestError{404, "not_found", "tile address out of range"};

  TileSpec spec;
  spec.plane = *plane;
  spec.n = *n;
  spec.zoom = *zoom;
  spec.tx = *tx;
  spec.ty = *ty;
  spec.budget = integer(req, "budget", kDefaultRenderBudget);
  check_range(spec.budget, 1, kMaxTileBudget, "budget");
  if (spec.zoom > kMaxZoom || !spec.in_range())
    throw RequestError{404, "tile_out_of_range", "tile (" + m[3].str() + "/" + m[4].str() + "/" + m[5].str() +
                                                     ") lies outside the tile pyramid"};

  std::optional<MapParams> params;
  if (spec.plane == Plane::Dynamical) {
    params = params_from(spec.n, {number(req, "re"), number(req, "im")});
    spec.lambda = params->lambda();
  } else if (spec.n < 2 || spec.n > 64) {
    throw RequestError{400, "invalid_degree", "n must lie in [2, 64]"};
  }

  const std::string key = canonical_url(req);
  std::string body;
  if (auto hit = cache_.get(key)) {
    body = std::move(*hit);
  } else {
    const RenderStyle style;
    const Image image = spec.plane == Plane::Parameter
                            ? render_parameter_tile(spec, style, options_.render_workers)
                            : render_dynamical_tile(spec, style, render_attractors(*params), options_.render_workers);
    const auto png = encode_png(image);
    body = cache_.insert(key, std::string(png.begin(), png.end()));
  }

  HttpResponse r;
  const std::string etag = "\"" + sha256_hex(body) + "\"";
  r.headers["ETag"] = etag;
  r.headers["Cache-Control"] = "public, max-age=86400";
  r.content_type = "image/png";
  if (!req.if_none_match.empty() && (req.if_none_match == etag || req.if_none_match == "*")) {
    r.status = 304;
    return r;
  }
  r.status = 200;
  r.body = std::move(body);
  return r;
}

HttpResponse TileService::handle(const HttpRequest& request) {
  HttpResponse response;
  try {
    if (request.path == "/api/classify") {
      response = classify_route(request);
    } else if (request.path == "/api/orbit") {
      response = orbit_route(request);
    } else if (request.path == "/api/examples") {
      response = examples_route();
    } else if (request.path.starts_with("/tiles/")) {
      response = tile(request);
    } else {
      response = error_response({404, "not_found", "no route for " + request.path});
    }
  } catch (const RequestError& e) {
    response = error_response(e);
  } catch (const std::invalid_argument& e) {
    response = error_response({400, "invalid_argument", e.what()});
  } catch (const std::exception& e) {
    response = error_response({500, "internal_error", e.what()});
  }
  response.headers["Access-Control-Allow-Origin"] = "*";
  return response;
}

struct HttpServer::Impl {
  explicit Impl(TileService& s) : service(s) {}
  TileService& service;
  httplib::Server server;
};

HttpServer::HttpServer(TileService& service) : impl_(std::make_unique<Impl>(service)) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest request;
    request.path = req.path;
    for (const auto& [k, v] : req.params) request.query.emplace(k, v);
    request.if_none_match = req.get_header_value("If-None-Match");
    const HttpResponse response = impl_->service.handle(request);
    res.status = response.status;
    for (const auto& [k, v] : response.headers) res.set_header(k, v);
    if (response.status != 304) res.set_content(response.body, response.content_type);
  };
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "GET, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "If-None-Match");
    res.status = 204;
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace bubbledyn
