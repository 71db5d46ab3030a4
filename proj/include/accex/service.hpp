#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "accex/ingest.hpp"
#include "accex/reports.hpp"
#include "accex/scenario.hpp"
#include "accex/whatif.hpp"

namespace accex {

struct InputOptions {
  std::string gmon_path;
  std::string symbols_path;
  std::string profile_path;  // portable JSON; exclusive with gmon + symbols
  int ptr_size = 8;
  std::optional<Rational> quantum;  // overrides the file's sampling rate
};

struct LoadedProfile {
  RawProfile raw;
  SymbolTable symbols;
  WhatIfProfile whatif;
  std::vector<std::string> warnings;
};

// Throws Error (IoError names the offending path).
LoadedProfile load_profile(const InputOptions& options);
LoadedProfile load_profile(RawProfile raw, SymbolTable symbols);

// JSON views shared by the CLI (--json) and the HTTP API, so both emit the
// same bytes for the same request.
class Service {
 public:
  struct Response {
    int status = 200;
    std::string body;
  };

  explicit Service(LoadedProfile profile, ReportOptions options = {});

  const LoadedProfile& profile() const { return profile_; }
  const CallGraph& graph() const { return profile_.whatif.base; }

  nlohmann::json profile_json() const;    // flat, callgraph, totals
  nlohmann::json flat_doc() const;        // flat, totals
  nlohmann::json callgraph_doc() const;   // callgraph, totals
  nlohmann::json ids_doc() const;
  nlohmann::json whatif(const Scenario& scenario) const;
  nlohmann::json sweep(const std::string& target, const std::vector<Rational>& grid) const;

  // Routes GET /api/profile, GET /api/ids, POST /api/whatif, POST /api/sweep.
  Response handle(const std::string& method, const std::string& path,
                  const std::string& body) const;

 private:
  LoadedProfile profile_;
  ReportOptions options_;
};

std::string error_body(std::string_view code, const std::string& message);

// Serializes JSON the way every command and endpoint does.
std::string dump_json(const nlohmann::json& doc);

class HttpServer {
 public:
  explicit HttpServer(const Service& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds (port 0 picks a free port) and returns the bound port. Throws
  // IoError when the port is unavailable.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace accex
