// Command-line front end for the verification suites: one subcommand per
// suite, JSON config/report, deterministic under a fixed seed.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "eqindex/checks.hpp"

using namespace eqindex;

int main(int argc, char** argv) {
  CLI::App app{"eqindex - exact equivariant index calculus verification harness"};
  app.require_subcommand(0, 1);

  std::string config_path, out_path, sweep_path;
  uint64_t seed = 0;
  bool list_checks = false;
  double tolerance = 0;
  int kflag = -100;
  double sflag = -100;

  auto* seed_opt = app.add_option("--seed", seed, "random seed");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "report output path");
  app.add_option("--tolerance", tolerance, "kirillov tolerance override");
  app.add_option("--k", kflag, "twist degree for the kirillov check");
  app.add_option("--s", sflag, "action parameter for the kirillov check");
  app.add_option("--sweep", sweep_path, "write the kirillov s-sweep CSV to this path");
  app.add_flag("--list-checks", list_checks, "list check ids and exit");

  std::vector<std::string> suites{"algebra", "forms", "dnc", "rescale",
                                  "symbols", "mehler", "kirillov", "all"};
  std::string chosen;
  for (const auto& s : suites) {
    auto* sub = app.add_subcommand(s, "run the " + s + " suite");
    sub->fallthrough();  // global flags may follow the subcommand
    sub->callback([&chosen, s]() { chosen = s; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_checks) {
    for (const auto& c : harness::registry())
      std::cout << c.id << "\t" << c.suite << "\t" << c.anchor << "\n";
    return 0;
  }

  harness::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "config: cannot open " << config_path << "\n";
        return 2;
      }
      harness::json j;
      try {
        in >> j;
      } catch (const std::exception& e) {
        std::cerr << "config: parse error in " << config_path << ": " << e.what() << "\n";
        return 2;
      }
      cfg = harness::parse_config(j);
    }
    if (!chosen.empty()) cfg.suite = chosen;
    if (*seed_opt) cfg.seed = seed;
    if (tolerance > 0) cfg.tolerance = tolerance;
    if (kflag != -100) {
      cfg.k = kflag;
      cfg.k_s_explicit = true;
    }
    if (sflag != -100) {
      cfg.s = sflag;
      cfg.k_s_explicit = true;
    }
    if (!out_path.empty()) cfg.out_path = out_path;
    if (!sweep_path.empty()) cfg.sweep_path = sweep_path;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return 2;
  }

  harness::Report rep;
  try {
    rep = harness::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return 2;
  }

  if (!cfg.sweep_path.empty()) {
    std::ofstream sw(cfg.sweep_path);
    sw << kirillov::s_sweep_csv(cfg.k, cfg.quad);
  }

  std::string serialized = rep.doc.dump(2) + "\n";
  if (!cfg.out_path.empty()) {
    std::ofstream out(cfg.out_path);
    out << serialized;
  } else {
    std::cout << serialized;
  }

  for (const auto& c : rep.doc["checks"])
    std::cerr << c["id"].get<std::string>() << ": " << c["status"].get<std::string>() << "\n";

  return rep.exit_code();
}
