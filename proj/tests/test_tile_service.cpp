#include <doctest.h>

#include <httplib.h>

#include <cmath>
#include <json.hpp>
#include <thread>

#include "bubbledyn/complex_parse.hpp"
#include "bubbledyn/image_io.hpp"
#include "bubbledyn/renderer.hpp"
#include "bubbledyn/tile_service.hpp"

using namespace bubbledyn;
using nlohmann::json;

namespace {

HttpResponse get(TileService& service, const std::string& path, std::map<std::string, std::string> query = {},
                 std::string if_none_match = {}) {
  return service.handle({path, std::move(query), std::move(if_none_match)});
}

json body_json(const HttpResponse& r) { return json::parse(r.body); }

}  // namespace

TEST_CASE("classify route") {
  TileService service;
  SUBCASE("cantor bubbles") {
    const auto r = get(service, "/api/classify", {{"n", "3"}, {"re", "0.16"}, {"im", "0"}});
    CHECK(r.status == 200);
    CHECK(r.content_type == "application/json");
    const json j = body_json(r);
    CHECK(j["kind"] == "cantor_bubbles");
    CHECK(j["subcase"] == "case3b");
    CHECK(j["evidence"]["trap_active"] == true);
  }
  SUBCASE("cantor set") {
    const json j = body_json(get(service, "/api/classify", {{"n", "3"}, {"re", "0"}, {"im", "-1"}}));
    CHECK(j["kind"] == "cantor_set");
    CHECK(j["subcase"] == "case1");
  }
  SUBCASE("bad arguments") {
    CHECK(get(service, "/api/classify", {{"n", "3"}, {"re", "0"}, {"im", "0"}}).status == 400);
    CHECK(get(service, "/api/classify", {{"n", "1"}, {"re", "0.2"}, {"im", "0"}}).status == 400);
    CHECK(get(service, "/api/classify", {{"n", "3"}, {"im", "0"}}).status == 400);
    const auto bad = get(service, "/api/classify", {{"n", "3"}, {"re", "zero"}, {"im", "0"}});
    CHECK(bad.status == 422);
    const json e = body_json(bad);
    CHECK(e.contains("error"));
    CHECK(e.contains("detail"));
    CHECK(get(service, "/api/classify", {{"n", "3"}, {"re", "0.16"}, {"im", "0"}, {"budget", "50"}}).status ==
          400);
  }
}

TEST_CASE("orbit route") {
  TileService service;
  SUBCASE("v1 of sqrt(3)/9 lands on the pole") {
    const auto r = get(service, "/api/orbit",
                       {{"n", "3"}, {"re", "0.19245008972987526"}, {"im", "0"}, {"seed", "v1"}, {"max", "5"}});
    REQUIRE(r.status == 200);
    const json j = body_json(r);
    CHECK(j["outcome"] == "escaped");
    CHECK(j["steps"] == 1);
    REQUIRE(j["trace"].size() == 2);
    CHECK(j["trace"][0][0].get<double>() == doctest::Approx(std::sqrt(3.0) / 3.0));
    CHECK(j["trace"][1].is_null());
    CHECK(j["final"].is_null());
  }
  SUBCASE("4/25 orbits are trapped") {
    const json v0 = body_json(get(service, "/api/orbit", {{"n", "3"}, {"re", "0.16"}, {"im", "0"}, {"seed", "v0"}}));
    CHECK(v0["outcome"] == "trapped");
    CHECK(v0["steps"] == 0);
    const json v1 = body_json(get(service, "/api/orbit", {{"n", "3"}, {"re", "0.16"}, {"im", "0"}, {"seed", "v1"}}));
    CHECK(v1["outcome"] == "trapped");
    CHECK(v1["steps"] == 2);
  }
  SUBCASE("custom seed and limits") {
    const json j = body_json(get(service, "/api/orbit",
                                 {{"n", "3"}, {"re", "0"}, {"im", "-1"}, {"seed", "custom"}, {"zre", "100"}, {"zim", "0"}}));
    CHECK(j["outcome"] == "escaped");
    CHECK(j["steps"] == 0);
    CHECK(get(service, "/api/orbit", {{"n", "3"}, {"re", "0.1"}, {"im", "0"}, {"seed", "v7"}}).status == 400);
    CHECK(get(service, "/api/orbit", {{"n", "3"}, {"re", "0.1"}, {"im", "0"}, {"max", "10001"}}).status == 400);
  }
}

TEST_CASE("examples route reclassifies consistently") {
  TileService service;
  const auto r = get(service, "/api/examples");
  REQUIRE(r.status == 200);
  const json rows = body_json(r);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CAPTURE(row.dump());
    const json c = body_json(get(service, "/api/classify",
                                 {{"n", std::to_string(row["n"].get<int>())},
                                  {"re", row["re"].dump()},
                                  {"im", row["im"].dump()}}));
    CHECK(c["kind"] == row["kind"]);
    CHECK(c["subcase"] == row["subcase"]);
  }
}

TEST_CASE("tile route") {
  ServiceOptions options;
  options.render_workers = 2;
  TileService service(options);

  const auto first = get(service, "/tiles/param/3/0/0/0.png", {{"budget", "200"}});
  REQUIRE(first.status == 200);
  CHECK(first.content_type == "image/png");
  const std::vector<std::uint8_t> png(first.body.begin(), first.body.end());
  const Image image = decode_png(png);
  CHECK(image.width() == kTileSize);
  CHECK(image.height() == kTileSize);
  const std::string etag = first.headers.at("ETag");
  CHECK(etag == "\"" + sha256_hex(first.body) + "\"");

  const auto again = get(service, "/tiles/param/3/0/0/0.png", {{"budget", "200"}});
  CHECK(again.body == first.body);
  CHECK(again.headers.at("ETag") == etag);
  CHECK(service.cached_tiles() == 1);

  // A fresh service renders the same bytes.
  TileService other;
  CHECK(get(other, "/tiles/param/3/0/0/0.png", {{"budget", "200"}}).body == first.body);

  const auto revalidated = get(service, "/tiles/param/3/0/0/0.png", {{"budget", "200"}}, etag);
  CHECK(revalidated.status == 304);
  CHECK(revalidated.body.empty());
  CHECK(get(service, "/tiles/param/3/0/0/0.png", {{"budget", "200"}}, "\"stale\"").status == 200);

  CHECK(get(service, "/tiles/param/3/1/2/0.png").status == 404);
  CHECK(get(service, "/tiles/param/3/41/0/0.png").status == 404);
  CHECK(get(service, "/tiles/param/3/0/-1/0.png").status == 404);
  CHECK(get(service, "/tiles/mandel/3/0/0/0.png").status == 404);
  CHECK(get(service, "/tiles/julia/3/0/0/0.png").status == 400);
  CHECK(get(service, "/tiles/julia/3/0/0/0.png", {{"re", "0"}, {"im", "0"}}).status == 400);
  CHECK(get(service, "/nowhere").status == 404);
}

TEST_CASE("julia tile shows the superattracting basin") {
  TileService service;
  const auto r = get(service, "/tiles/julia/3/2/2/1.png", {{"re", "0.2722"}, {"im", "0"}});
  REQUIRE(r.status == 200);
  const Image image = decode_png(std::vector<std::uint8_t>(r.body.begin(), r.body.end()));
  const RenderStyle style;
  const Rgb hue = style.attractor_hues[1];
  int hits = 0;
  for (int y = 0; y < image.height(); ++y)
    for (int x = 0; x < image.width(); ++x)
      if (const Rgb c = image.rgb(x, y); c.r > 0 && std::abs(c.r * hue.g - c.g * hue.r) <= 2 * 255 &&
                                         std::abs(c.r * hue.b - c.b * hue.r) <= 2 * 255)
        ++hits;  // hue scaled by hitting time
  CHECK(hits > 500);
}

TEST_CASE("every response allows cross-origin reads") {
  TileService service;
  CHECK(get(service, "/api/examples").headers.at("Access-Control-Allow-Origin") == "*");
  CHECK(get(service, "/nowhere").headers.at("Access-Control-Allow-Origin") == "*");
  CHECK(get(service, "/api/classify").headers.at("Access-Control-Allow-Origin") == "*");
}

TEST_CASE("tile cache is bounded and least-recently-used") {
  TileCache cache(2);
  cache.insert("a", "1");
  cache.insert("b", "2");
  CHECK(cache.get("a") == "1");  // a is now most recent
  cache.insert("c", "3");
  CHECK(cache.size() == 2);
  CHECK_FALSE(cache.get("b"));
  CHECK(cache.get("a") == "1");
  CHECK(cache.insert("a", "changed") == "1");

  ServiceOptions options;
  options.cache_capacity = 2;
  TileService service(options);
  for (int tx = 0; tx < 4; ++tx)
    CHECK(get(service, "/tiles/param/3/2/" + std::to_string(tx) + "/0.png", {{"budget", "20"}}).status == 200);
  CHECK(service.cached_tiles() == 2);
}

TEST_CASE("sha256 known answer") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("HTTP server over a socket") {
  TileService service;
  HttpServer server(service);
  const int port = server.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  std::thread loop([&] { server.listen(); });

  httplib::Client client("127.0.0.1", port);
  const auto classify = client.Get("/api/classify?n=3&re=0.16&im=0");
  REQUIRE(classify);
  CHECK(classify->status == 200);
  CHECK(json::parse(classify->body)["kind"] == "cantor_bubbles");
  CHECK(classify->get_header_value("Access-Control-Allow-Origin") == "*");

  const auto tile = client.Get("/tiles/param/3/1/0/0.png?budget=50");
  REQUIRE(tile);
  CHECK(tile->status == 200);
  CHECK(tile->get_header_value("Content-Type") == "image/png");
  const std::string etag = tile->get_header_value("ETag");
  const auto cached = client.Get("/tiles/param/3/1/0/0.png?budget=50", {{"If-None-Match", etag}});
  REQUIRE(cached);
  CHECK(cached->status == 304);

  const auto missing = client.Get("/tiles/param/3/1/9/0.png");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  server.stop();
  loop.join();
}
