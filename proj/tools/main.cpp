#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

#include "commands.h"
#include "scqc/errors.h"

int main(int argc, char** argv) {
  using namespace scqc_cli;

  CLI::App app{"scqc - geometric pulse design and dual-rail erasure-check "
               "simulation"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand name

  GlobalOptions options;
  app.add_option("--config", options.config_path, "JSON config file");
  app.add_option("--out", options.out_dir, "output directory");
  app.add_option("--seed", options.seed, "random seed");
  app.add_option("--threads", options.threads,
                 "worker threads for sweeps (env SCQC_THREADS overrides)");

  std::string pulse_csv;
  std::string export_curve;
  double tol = 1e-6;
  auto* check = app.add_subcommand(
      "check-curve", "closure, signed area and implemented gate of a pulse");
  check->add_option("pulse", pulse_csv, "pulse CSV file")->required();
  check->add_option("--tol", tol, "closure tolerance");
  check->add_option("--export-curve", export_curve,
                    "write the error curve as CSV (t,rx,ry,rz)");

  auto* sweep = app.add_subcommand(
      "crosstalk-sweep", "two-qubit ZZ-crosstalk infidelity scaling");
  auto* jp = app.add_subcommand(
      "jp", "joint-parity erasure-check misclassification sweeps");
  auto* zz = app.add_subcommand("zz", "logical ZZ(theta) construction checks");
  auto* design = app.add_subcommand("design", "pulse synthesis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (const char* env = std::getenv("SCQC_THREADS")) {
    options.threads = std::max(1, std::atoi(env));
  }

  try {
    if (check->parsed())
      return cmd_check_curve(pulse_csv, tol, export_curve, options);
    if (sweep->parsed()) return cmd_crosstalk_sweep(options);
    if (jp->parsed()) return cmd_jp(options);
    if (zz->parsed()) return cmd_zz(options);
    if (design->parsed()) return cmd_design(options);
  } catch (const scqc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const scqc::FitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const scqc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
