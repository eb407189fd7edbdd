#pragma once

#include <cstdint>
#include <string>

namespace scqc_cli {

// exit codes shared by every subcommand
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct GlobalOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  int threads = 1;  // SCQC_THREADS overrides
};

int cmd_check_curve(const std::string& pulse_csv, double tol,
                    const std::string& export_curve_path,
                    const GlobalOptions& options);
int cmd_crosstalk_sweep(const GlobalOptions& options);
int cmd_jp(const GlobalOptions& options);
int cmd_zz(const GlobalOptions& options);
int cmd_design(const GlobalOptions& options);

}  // namespace scqc_cli
