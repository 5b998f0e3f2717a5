// bubbledyn: classify, iterate, grid-sweep, render and serve the family
// f(z) = z^n + lambda^2 / (z^n - lambda).
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bubbledyn/classifier.hpp"
#include "bubbledyn/complex_parse.hpp"
#include "bubbledyn/image_io.hpp"
#include "bubbledyn/json_io.hpp"
#include "bubbledyn/parallel.hpp"
#include "bubbledyn/reference_examples.hpp"
#include "bubbledyn/renderer.hpp"
#include "bubbledyn/tile_service.hpp"

namespace {

using namespace bubbledyn;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Complex require_lambda(const std::string& text) {
  const auto value = parse_complex(text);
  if (!value) throw UsageError("--lambda: cannot parse '" + text + "' (expected a+bi)");
  if (*value == Complex{0.0, 0.0}) throw UsageError("--lambda must be nonzero");
  return *value;
}

Window parse_window(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = parse_double(item);
    if (!v) throw UsageError("--window: cannot parse '" + item + "'");
    parts.push_back(*v);
  }
  if (parts.size() != 4) throw UsageError("--window expects re_min,im_min,re_max,im_max");
  const Window w{parts[0], parts[1], parts[2], parts[3]};
  if (!(w.re_max > w.re_min) || !(w.im_max > w.im_min)) throw UsageError("--window is degenerate");
  return w;
}

std::pair<int, int> parse_resolution(const std::string& text) {
  const auto comma = text.find_first_of(",x");
  const auto w = parse_int(text.substr(0, comma));
  const auto h = comma == std::string::npos ? w : parse_int(text.substr(comma + 1));
  if (!w || !h || *w < 1 || *h < 1) throw UsageError("--res expects W or W,H with positive integers");
  return {*w, *h};
}

void check_n(int n) {
  if (n < 2) throw UsageError("--n must be >= 2");
}

struct Options {
  int n = 3;
  std::string lambda;
  int budget = 0;
  std::string window = "-2,-2,2,2";
  std::string res = "512";
  std::string out;
  std::string plane = "param";
  std::string format;
  std::string seed = "v1";
  int trace = 100;
  bool markers = false;
  unsigned threads = 0;
  double ratio_tol = kSecondIterateTolerance;
  std::string host = "127.0.0.1";
  int port = 8642;
};

int cmd_classify(const Options& o) {
  check_n(o.n);
  const MapParams params(o.n, require_lambda(o.lambda));
  const int budget = o.budget ? o.budget : kDefaultClassifyBudget;
  if (budget < 100) throw UsageError("--budget must be >= 100 for classify");
  std::cout << classification_json(params, classify(params, budget)).dump(2) << "\n";
  return 0;
}

int cmd_orbit(const Options& o) {
  check_n(o.n);
  const MapParams params(o.n, require_lambda(o.lambda));
  const int budget = o.budget ? o.budget : kDefaultClassifyBudget;
  if (budget < 1) throw UsageError("--budget must be >= 1");
  Complex seed;
  if (o.seed == "v0") {
    seed = params.v0();
  } else if (o.seed == "v1") {
    seed = params.v1();
  } else if (const auto z = parse_complex(o.seed)) {
    seed = *z;
  } else {
    throw UsageError("--seed must be v0, v1 or a complex number");
  }
  const auto trap = params.experimental() ? std::nullopt : trap_disk(params, kTrapKappa);
  const OrbitResult orbit = iterate_orbit(params, SpherePoint::finite(seed), budget, trap, o.trace);
  std::cout << orbit_json(orbit).dump(2) << "\n";
  return 0;
}

int cmd_grid(const Options& o) {
  check_n(o.n);
  const Window window = parse_window(o.window);
  const auto [cols, rows] = parse_resolution(o.res);
  const int budget = o.budget ? o.budget : kDefaultClassifyBudget;
  if (budget < 100) throw UsageError("--budget must be >= 100 for grid");
  const auto result = classify_grid(o.n, window, cols, rows, budget, o.threads);
  if (o.out.empty() || o.out == "-") {
    write_csv(std::cout, result);
  } else {
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + o.out + " for writing");
    try {
      write_csv(file, result);
    } catch (const std::runtime_error& e) {
      throw IoError(e.what());
    }
  }
  return 0;
}

int cmd_render(const Options& o) {
  check_n(o.n);
  const auto plane = parse_plane(o.plane);
  if (!plane) throw UsageError("--plane must be param or julia");
  const Window window = parse_window(o.window);
  const auto [width, height] = parse_resolution(o.res);

  ViewRequest request;
  request.plane = *plane;
  request.n = o.n;
  request.budget = o.budget ? o.budget : kDefaultRenderBudget;
  if (request.budget < 1) throw UsageError("--budget must be >= 1");
  request.markers = o.markers;
  request.viewport = Viewport{Complex{(window.re_min + window.re_max) / 2.0, (window.im_min + window.im_max) / 2.0},
                              (window.re_max - window.re_min) / 2.0, width, height};
  if (*plane == Plane::Dynamical) {
    if (o.lambda.empty()) throw UsageError("--lambda is required for --plane julia");
    request.lambda = require_lambda(o.lambda);
  }

  std::string format = o.format;
  if (format.empty()) format = o.out.ends_with(".ppm") ? "ppm" : "png";
  if (format != "png" && format != "ppm") throw UsageError("--format must be png or ppm");
  std::string out = o.out;
  if (out.empty()) {
    TileSpec naming;
    naming.plane = *plane;
    naming.n = o.n;
    naming.lambda = request.lambda.value_or(Complex{});
    out = naming.file_name();
    if (format == "ppm") out = out.substr(0, out.size() - 4) + ".ppm";
  }

  const Image image = render_view(request, RenderStyle{}, o.threads);
  write_file(out, format == "png" ? encode_png(image) : encode_ppm(image));
  std::cerr << "wrote " << out << " (" << width << "x" << height << ")\n";
  return 0;
}

int cmd_verify(const Options& o) {
  const int budget = o.budget ? o.budget : kDefaultClassifyBudget;
  const auto rows = run_reference_checks(budget, o.ratio_tol);
  int passed = 0;
  std::printf("%-46s %-28s %-28s %s\n", "check", "expected", "actual", "result");
  for (const CheckRow& row : rows) {
    std::printf("%-46s %-28s %-28s %s\n", row.name.c_str(), row.expected.c_str(), row.actual.c_str(),
                row.pass ? "PASS" : "FAIL");
    passed += row.pass ? 1 : 0;
  }
  std::printf("%d/%zu PASS\n", passed, rows.size());
  return passed == static_cast<int>(rows.size()) ? 0 : kExitVerifyFailed;
}

int cmd_serve(const Options& o) {
  ServiceOptions options;
  options.render_workers = o.threads;
  TileService service(options);
  HttpServer server(service);
  const int port = server.bind(o.host, o.port);
  std::cerr << "serving on http://" << o.host << ":" << port << "\n";
  server.listen();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamics of f(z) = z^n + lambda^2/(z^n - lambda): classification, orbits, rendering"};
  app.require_subcommand(1);
  Options o;

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", o.n, "Degree n >= 2")->capture_default_str(); };
  auto add_lambda = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--lambda", o.lambda, "Parameter as a+bi (e.g. 0.16+0i, -0-1i)");
    if (required) opt->required();
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads (0 = BUBBLEDYN_THREADS or all cores)");
  };

  auto* classify_cmd = app.add_subcommand("classify", "Classify the Julia set of one parameter (JSON)");
  add_n(classify_cmd);
  add_lambda(classify_cmd, true);
  classify_cmd->add_option("--budget", o.budget, "Iteration budget (default 5000)");

  auto* orbit_cmd = app.add_subcommand("orbit", "Iterate a critical value or custom seed (JSON)");
  add_n(orbit_cmd);
  add_lambda(orbit_cmd, true);
  orbit_cmd->add_option("--seed", o.seed, "v0, v1 or a complex seed")->capture_default_str();
  orbit_cmd->add_option("--budget", o.budget, "Iteration budget (default 5000)");
  orbit_cmd->add_option("--max", o.trace, "Trace points to print")->capture_default_str();

  auto* grid_cmd = app.add_subcommand("grid", "Classify a grid of parameters (CSV)");
  add_n(grid_cmd);
  grid_cmd->add_option("--window", o.window, "re_min,im_min,re_max,im_max")->capture_default_str();
  grid_cmd->add_option("--res", o.res, "Grid size W or W,H")->capture_default_str();
  grid_cmd->add_option("--budget", o.budget, "Iteration budget per cell (default 5000)");
  grid_cmd->add_option("--out", o.out, "CSV path (default stdout)");
  add_threads(grid_cmd);

  auto* render_cmd = app.add_subcommand("render", "Render the parameter plane or a Julia set");
  render_cmd->add_option("--plane", o.plane, "param or julia")->capture_default_str();
  add_n(render_cmd);
  add_lambda(render_cmd, false);
  render_cmd->add_option("--window", o.window, "re_min,im_min,re_max,im_max")->capture_default_str();
  render_cmd->add_option("--res", o.res, "Image size W or W,H")->capture_default_str();
  render_cmd->add_option("--budget", o.budget, "Iteration budget (default 500; v1 gets 10x in param plane)");
  render_cmd->add_flag("--markers", o.markers, "Mark critical points (red) and critical values (blue)");
  render_cmd->add_option("--out", o.out, "Output path (default derived from the parameters)");
  render_cmd->add_option("--format", o.format, "png or ppm (default from --out extension)");
  add_threads(render_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Check the reference examples");
  verify_cmd->alias("verify-paper");
  verify_cmd->add_option("--budget", o.budget, "Iteration budget (default 5000)");
  verify_cmd->add_option("--ratio-tol", o.ratio_tol, "Tolerance of the second-iterate ratio check")
      ->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API and tiles");
  serve_cmd->add_option("--host", o.host, "Bind address")->capture_default_str();
  serve_cmd->add_option("--port", o.port, "Port")->capture_default_str();
  add_threads(serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*classify_cmd) return cmd_classify(o);
    if (*orbit_cmd) return cmd_orbit(o);
    if (*grid_cmd) return cmd_grid(o);
    if (*render_cmd) return cmd_render(o);
    if (*verify_cmd) return cmd_verify(o);
    if (*serve_cmd) return cmd_serve(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
