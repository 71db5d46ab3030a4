#include "accex/cli.hpp"

#include <cstdlib>
#include <csignal>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "accex/error.hpp"
#include "accex/service.hpp"

namespace accex {
namespace {

struct CommonFlags {
  std::string gmon;
  std::string symbols;
  std::string profile;
  int ptr_size = 8;
  std::string quantum;
  bool json = false;
  bool all = false;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--gmon", flags.gmon, "gmon.out file");
  cmd->add_option("--symbols", flags.symbols, "symbol map (name lowhex highhex per line)");
  cmd->add_option("--profile", flags.profile, "portable JSON profile");
  cmd->add_option("--ptr-size", flags.ptr_size, "gmon pointer size in bytes")
      ->check(CLI::IsMember({4, 8}));
  cmd->add_option("--quantum", flags.quantum, "seconds per sample (overrides the profile)");
  cmd->add_flag("--json", flags.json, "emit JSON");
  cmd->add_flag("--all", flags.all, "include functions with no time and no calls");
  cmd->add_option("--out", flags.out, "write output to this file instead of stdout");
}

InputOptions input_options(const CommonFlags& flags) {
  InputOptions options;
  options.gmon_path = flags.gmon;
  options.symbols_path = flags.symbols;
  options.profile_path = flags.profile;
  options.ptr_size = flags.ptr_size;
  std::string quantum = flags.quantum;
  if (quantum.empty()) {
    if (const char* env = std::getenv("ACCEX_QUANTUM")) quantum = env;
  }
  if (!quantum.empty()) {
    options.quantum = parse_decimal(quantum);
    if (*options.quantum <= 0) throw Error(ErrorCode::ParseError, "quantum must be positive");
  }
  return options;
}

void emit(const CommonFlags& flags, const std::string& text, std::ostream& out) {
  if (flags.out.empty()) {
    out << text;
  } else {
    write_file_text(flags.out, text);
  }
}

HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"accex: call-graph profile analysis with user-defined execution times"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string scenario_path;
  std::string target;
  std::string grid;
  std::string host = "127.0.0.1";
  int port = 8080;

  auto* flat = app.add_subcommand("flat", "flat profile");
  auto* callgraph = app.add_subcommand("callgraph", "call-graph profile");
  auto* ids = app.add_subcommand("ids", "table of stable attribution ids");
  auto* whatif = app.add_subcommand("whatif", "apply a scenario of time edits");
  auto* sweep_cmd = app.add_subcommand("sweep", "sensitivity sweep for one function");
  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  for (auto* cmd : {flat, callgraph, ids, whatif, sweep_cmd, serve}) add_common(cmd, flags);
  whatif->add_option("--scenario", scenario_path, "scenario JSON")->required();
  sweep_cmd->add_option("--target", target, "function whose self time is reduced")->required();
  sweep_cmd->add_option("--grid", grid, "comma-separated reduction fractions in [0,1]");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "bind address");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    Service service(load_profile(input_options(flags)), ReportOptions{flags.all});
    for (const std::string& w : service.profile().warnings) err << "warning: " << w << "\n";
    const CallGraph& graph = service.graph();

    if (*flat) {
      emit(flags,
           flags.json ? dump_json(service.flat_doc())
                      : render_flat(graph, flat_profile(graph, ReportOptions{flags.all})),
           out);
    } else if (*callgraph) {
      emit(flags,
           flags.json ? dump_json(service.callgraph_doc())
                      : render_callgraph(graph, callgraph_profile(graph, ReportOptions{flags.all})),
           out);
    } else if (*ids) {
      emit(flags,
           flags.json ? dump_json(service.ids_doc())
                      : ids_table(service.profile().whatif.records, graph.quantum),
           out);
    } else if (*whatif) {
      const Scenario scenario = parse_scenario(read_file_text(scenario_path));
      if (flags.json) {
        emit(flags, dump_json(service.whatif(scenario)), out);
      } else {
        const ScenarioRun run = run_scenario(service.profile().whatif, scenario);
        std::string text = render_whatif(run.result);
        if (scenario.sweep) {
          text += "\n" + sweep_csv(accex::sweep(run.edited, scenario.sweep->target,
                                                scenario.sweep->grid));
        }
        emit(flags, text, out);
      }
    } else if (*sweep_cmd) {
      const std::vector<Rational> fractions =
          grid.empty() ? default_sweep_grid() : parse_grid(grid);
      if (flags.json) {
        emit(flags, dump_json(service.sweep(target, fractions)), out);
      } else {
        emit(flags, sweep_csv(accex::sweep(service.profile().whatif, target, fractions)), out);
      }
    } else if (*serve) {
      HttpServer server(service);
      const int bound = server.bind(host, port);
      err << "serving on http://" << host << ":" << bound << "\n";
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      server.listen();
      g_server = nullptr;
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "accex: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::CycleInCondensation ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "accex: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace accex
