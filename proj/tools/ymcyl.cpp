// Command-line driver for the named experiments.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "ymcyl/harmonic.hpp"
#include "ymcyl/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Segal-Bargmann quantization of Yang-Mills on a cylinder: verification experiments"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run one experiment from a config file");
  std::string config_path, out_path, format = "csv";
  std::uint64_t seed = 0;
  std::vector<std::string> overrides;
  run_cmd->add_option("--config", config_path, "key = value config file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "overrides the config seed");
  run_cmd->add_option("--out", out_path, "report file (default: standard output)");
  run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--set", overrides, "key=value override, repeatable");

  auto* list_cmd = app.add_subcommand("list", "list experiments and their parameters");

  CLI11_PARSE(app, argc, argv);

  if (list_cmd->parsed()) {
    for (const auto& e : ymcyl::experiments()) {
      std::cout << e.name << "  (" << e.operation << ")\n  " << e.summary << '\n';
      for (const auto& [k, v] : e.defaults) std::cout << "    " << k << " = " << v << '\n';
    }
    return 0;
  }

  try {
    auto config = ymcyl::ExperimentConfig::load(config_path);
    for (const auto& o : overrides) config.set(o);
    if (*seed_opt) config.seed = seed;
    const auto report = ymcyl::run(config);
    const auto fmt = ymcyl::parse_format(format);
    if (out_path.empty()) {
      ymcyl::emit(report, fmt, std::cout);
    } else {
      ymcyl::emit(report, fmt, out_path);
    }
    std::size_t failed = 0;
    for (const auto& row : report.rows) failed += row.pass ? 0 : 1;
    std::fprintf(stderr, "%s: %zu checks, %zu failed, %.1f s\n", report.experiment.c_str(), report.rows.size(), failed,
                 report.wall_seconds);
    return report.passed() ? 0 : 1;
  } catch (const ymcyl::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const ymcyl::TruncationError& e) {
    std::fprintf(stderr, "truncation error: %s (bound %.3g)\n", e.what(), e.bound());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
