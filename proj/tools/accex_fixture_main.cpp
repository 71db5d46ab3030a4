// accex-fixture: turns a workload spec into gmon.out, a symbol map and a
// portable profile, plus the analytic totals for checking the engine.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "accex/error.hpp"
#include "accex/fixture.hpp"

int main(int argc, char** argv) {
  CLI::App app{"accex-fixture: synthetic profile generator"};
  app.require_subcommand(1);
  std::string spec_path;
  std::string out_dir;
  int ptr_size = 8;
  auto* gen = app.add_subcommand("generate", "write gmon.out, symbols.map, profile.json");
  gen->add_option("--spec", spec_path, "workload spec JSON")->required();
  gen->add_option("--out-dir", out_dir, "output directory")->required();
  gen->add_option("--ptr-size", ptr_size, "gmon pointer size")->check(CLI::IsMember({4, 8}));
  CLI11_PARSE(app, argc, argv);

  try {
    namespace fs = std::filesystem;
    const auto spec = accex::fixture::parse_workload_spec(accex::read_file_text(spec_path));
    const auto generated = accex::fixture::generate(spec, {ptr_size});
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    const std::string gmon(generated.gmon.begin(), generated.gmon.end());
    accex::write_file_text((dir / "gmon.out").string(), gmon);
    accex::write_file_text((dir / "symbols.map").string(), generated.symbol_map);
    accex::write_file_text((dir / "profile.json").string(), generated.portable);

    nlohmann::json expected = nlohmann::json::object();
    try {
      for (const auto& [name, t] : accex::fixture::oracle_totals(spec)) {
        expected[name] = {{"self", accex::to_double(t.self)},
                          {"child", accex::to_double(t.child)},
                          {"total", accex::to_double(t.total)}};
      }
      accex::write_file_text((dir / "expected_totals.json").string(), expected.dump(1) + "\n");
    } catch (const accex::Error& e) {
      if (e.code() != accex::ErrorCode::CycleUnsupported) throw;
      std::cerr << "note: recursive workload, no expected totals written\n";
    }
  } catch (const accex::Error& e) {
    std::cerr << "accex-fixture: " << accex::error_code_name(e.code()) << ": " << e.what()
              << "\n";
    return 2;
  }
  return 0;
}
