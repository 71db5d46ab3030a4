#include "accex/service.hpp"

#include <httplib.h>

#include "accex/error.hpp"

namespace accex {

using nlohmann::json;

LoadedProfile load_profile(RawProfile raw, SymbolTable symbols) {
  LoadedProfile loaded;
  CallGraph graph = analyze(raw, symbols);
  loaded.whatif = make_whatif_profile(std::move(graph), raw.call_groups);
  loaded.raw = std::move(raw);
  loaded.symbols = std::move(symbols);
  return loaded;
}

LoadedProfile load_profile(const InputOptions& options) {
  const bool gmon_mode = !options.gmon_path.empty() || !options.symbols_path.empty();
  if (gmon_mode == !options.profile_path.empty()) {
    throw Error(ErrorCode::ParseError,
                "give either --gmon and --symbols, or --profile");
  }
  if (gmon_mode && (options.gmon_path.empty() || options.symbols_path.empty())) {
    throw Error(ErrorCode::ParseError, "--gmon and --symbols must be given together");
  }

  auto with_path = [](const std::string& path, auto&& fn) {
    try {
      return fn();
    } catch (const Error& e) {
      throw Error(e.code(), path + ": " + e.what());
    }
  };

  RawProfile raw;
  SymbolTable symbols;
  std::vector<std::string> warnings;
  if (gmon_mode) {
    const auto bytes = read_file_bytes(options.gmon_path);
    raw = with_path(options.gmon_path,
                    [&] { return read_gmon(bytes, {options.ptr_size}, &warnings); });
    const auto text = read_file_text(options.symbols_path);
    symbols = with_path(options.symbols_path, [&] { return read_symbol_map(text); });
  } else {
    const auto text = read_file_text(options.profile_path);
    auto portable = with_path(options.profile_path, [&] { return read_portable_profile(text); });
    raw = std::move(portable.profile);
    symbols = std::move(portable.symbols);
  }
  if (options.quantum) override_quantum(raw, *options.quantum);

  LoadedProfile loaded = load_profile(std::move(raw), std::move(symbols));
  loaded.warnings = std::move(warnings);
  return loaded;
}

std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string error_body(std::string_view code, const std::string& message) {
  return dump_json({{"error", code}, {"message", message}});
}

Service::Service(LoadedProfile profile, ReportOptions options)
    : profile_(std::move(profile)), options_(options) {}

json Service::flat_doc() const {
  return {{"flat", flat_json(flat_profile(graph(), options_))}, {"totals", totals_json(graph())}};
}

json Service::callgraph_doc() const {
  return {{"callgraph", callgraph_json(callgraph_profile(graph(), options_))},
          {"totals", totals_json(graph())}};
}

json Service::profile_json() const {
  return {{"flat", flat_json(flat_profile(graph(), options_))},
          {"callgraph", callgraph_json(callgraph_profile(graph(), options_))},
          {"totals", totals_json(graph())}};
}

json Service::ids_doc() const {
  return {{"quantum", to_double(graph().quantum)},
          {"ids", ids_json(profile_.whatif.records, graph().quantum)}};
}

json Service::whatif(const Scenario& scenario) const {
  const ScenarioRun run = run_scenario(profile_.whatif, scenario);
  json doc = whatif_json(run.result);
  if (scenario.sweep) {
    doc["sweep"] = sweep_json(accex::sweep(run.edited, scenario.sweep->target, scenario.sweep->grid));
  }
  return doc;
}

json Service::sweep(const std::string& target, const std::vector<Rational>& grid) const {
  return sweep_json(accex::sweep(profile_.whatif, target, grid));
}

Service::Response Service::handle(const std::string& method, const std::string& path,
                                  const std::string& body) const {
  try {
    if (method == "GET" && path == "/api/profile") return {200, dump_json(profile_json())};
    if (method == "GET" && path == "/api/ids") return {200, dump_json(ids_doc())};
    if (method == "POST" && path == "/api/whatif") {
      return {200, dump_json(whatif(parse_scenario(body)))};
    }
    if (method == "POST" && path == "/api/sweep") {
      json doc;
      try {
        doc = json::parse(body);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
      }
      if (!doc.is_object() || !doc.contains("target") || !doc["target"].is_string()) {
        throw Error(ErrorCode::ParseError, "sweep request needs a string 'target'");
      }
      // Reuse the scenario parser for the grid.
      const Scenario s = scenario_from_json({{"sweep", doc}});
      return {200, dump_json(sweep(s.sweep->target, s.sweep->grid))};
    }
    return {404, error_body("NotFound", method + " " + path)};
  } catch (const Error& e) {
    return {400, error_body(error_code_name(e.code()), e.what())};
  } catch (const json::exception& e) {
    return {400, error_body(error_code_name(ErrorCode::ParseError), e.what())};
  } catch (const std::exception& e) {
    return {500, error_body("Internal", e.what())};
  }
}

struct HttpServer::Impl {
  const Service& service;
  httplib::Server server;

  explicit Impl(const Service& s) : service(s) {
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
      const Service::Response r = service.handle(req.method, req.path, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Get("/api/profile", route);
    server.Get("/api/ids", route);
    server.Post("/api/whatif", route);
    server.Post("/api/sweep", route);
  }
};

HttpServer::HttpServer(const Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) {
    throw Error(ErrorCode::IoError, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace accex
