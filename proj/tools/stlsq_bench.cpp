#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "stlsq/bench.hpp"
#include "stlsq/pde_problem.hpp"

namespace bench = stlsq::bench;

int main(int argc, char** argv) {
  CLI::App app{"Space-time least-squares experiments"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "results";
  bool paper_scale = false;
  auto* run = app.add_subcommand("run", "Run one experiment and write CSV + SVG");
  run->add_option("--config", config_path, "Experiment JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run->add_flag("--paper-scale", paper_scale, "Apply the config's paper_scale overrides");

  std::string csv_path, method;
  double floor = 1e-12;
  auto* fit = app.add_subcommand("fit", "Fit a convergence order from a CSV");
  fit->add_option("--csv", csv_path, "CSV written by run")->required()->check(CLI::ExistingFile);
  fit->add_option("--method", method, "Method column value")->required();
  fit->add_option("--floor", floor, "Ignore errors below this")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;  // usage errors share exit code 1
  }

  try {
    if (*run) {
      const auto config = bench::load_config(config_path, paper_scale);
      const auto out = bench::run_and_write(config, out_dir);
      for (const auto& r : out.records) {
        std::cout << std::left << std::setw(28) << r.method << std::right << std::setw(8)
                  << r.param << std::setw(14) << std::scientific << std::setprecision(3)
                  << r.error << std::setw(6) << (r.iterations ? std::to_string(*r.iterations) : "-")
                  << std::setw(12) << std::fixed << std::setprecision(4) << r.wall_time_s << '\n';
      }
      std::cout << "wrote " << out.csv.string() << " and " << out.svg.string() << '\n';
    } else {
      std::ifstream in(csv_path, std::ios::binary);
      std::vector<bench::ConvergenceRecord> subset;
      for (auto& r : bench::read_csv(in))
        if (r.method == method) subset.push_back(std::move(r));
      if (subset.empty()) throw std::invalid_argument("no records for method '" + method + "'");
      std::cout << std::setprecision(4) << bench::fit_order(subset, floor) << '\n';
    }
  } catch (const stlsq::OracleError& e) {
    std::cerr << "reference oracle failed: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
