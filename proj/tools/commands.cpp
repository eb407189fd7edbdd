#include "commands.h"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "scqc/crosstalk.h"
#include "scqc/curve.h"
#include "scqc/frenet.h"
#include "scqc/optimizer.h"
#include "scqc/protocols.h"
#include "scqc/util.h"

namespace scqc_cli {

using nlohmann::json;
using namespace scqc;

namespace {

// ----------------------------------------------------------------------
// strict config handling
// ----------------------------------------------------------------------

json load_config(const GlobalOptions& options, std::string& raw) {
  if (options.config_path.empty())
    throw ParseError("missing --config <path>");
  std::ifstream in(options.config_path);
  if (!in) throw ParseError("cannot open config " + options.config_path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  raw = buffer.str();
  try {
    return json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

// misspelled parameters never silently default
void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& path) {
  if (!j.is_object()) throw ParseError("config: expected object at " + path);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key))
      throw ParseError("config: unknown key '" + key + "' at " + path);
  }
}

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw ParseError("config: '" + key + "' must be a number");
  return j.at(key).get<double>();
}

long get_integer(const json& j, const std::string& key, long fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer())
    throw ParseError("config: '" + key + "' must be an integer");
  return j.at(key).get<long>();
}

std::string get_string(const json& j, const std::string& key,
                       const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_string())
    throw ParseError("config: '" + key + "' must be a string");
  return j.at(key).get<std::string>();
}

// ----------------------------------------------------------------------
// output stamping
// ----------------------------------------------------------------------

std::vector<std::string> output_header(const GlobalOptions& options,
                                       const std::string& raw_config) {
  const std::uint64_t hash =
      fnv1a(raw_config + "|seed=" + std::to_string(options.seed));
  return {
      "scqc v0.1.0",
      "config_hash=" + hex64(hash),
      "seed=" + std::to_string(options.seed),
      "basis: " + BasisConvention::header(),
  };
}

std::string ensure_out_dir(const GlobalOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  return options.out_dir;
}

void write_json_file(const std::string& path, const json& payload) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << payload.dump(2) << "\n";
}

json header_json(const GlobalOptions& options, const std::string& raw_config) {
  const auto lines = output_header(options, raw_config);
  return json{{"version", "scqc v0.1.0"},
              {"config_hash", lines[1].substr(std::string("config_hash=").size())},
              {"seed", options.seed},
              {"basis", BasisConvention::header()}};
}

// shared design knobs for the synthesized pulses
struct DesignSpec {
  double chi = 1.0;
  double t_gate = 5.0 * kPi;
  int order = 6;
  long budget = 5000;
  int restarts = 8;
  int loops = 3;
  double sigma_ratio = 0.2;
};

DesignSpec parse_design(const json& j, double chi, double default_tg_pi) {
  DesignSpec spec;
  spec.chi = chi;
  if (j.is_null()) {
    spec.t_gate = default_tg_pi * kPi / chi;
    return spec;
  }
  reject_unknown(j, {"t_gate_chi_over_pi", "order", "budget", "restarts",
                     "loops", "sigma_ratio"},
                 "design");
  spec.t_gate = get_number(j, "t_gate_chi_over_pi", default_tg_pi) * kPi / chi;
  spec.order = static_cast<int>(get_integer(j, "order", 6));
  spec.budget = get_integer(j, "budget", 5000);
  spec.restarts = static_cast<int>(get_integer(j, "restarts", 8));
  spec.loops = static_cast<int>(get_integer(j, "loops", 3));
  spec.sigma_ratio = get_number(j, "sigma_ratio", 0.2);
  return spec;
}

}  // namespace

// ----------------------------------------------------------------------
// check-curve
// ----------------------------------------------------------------------

int cmd_check_curve(const std::string& pulse_csv, double tol,
                    const std::string& export_curve_path,
                    const GlobalOptions& options) {
  const ControlPulse pulse = read_pulse_csv(pulse_csv);
  const SpaceCurve curve = error_curve(pulse);
  const double gap = closure_gap(curve);
  const double pi1 = first_order_error(pulse);
  const bool closed = is_closed(curve, tol);
  if (!export_curve_path.empty())
    write_curve_csv(export_curve_path, curve,
                    {"scqc v0.1.0", "source=" + pulse_csv,
                     "basis: " + BasisConvention::header()});

  std::cout << "pulse: " << pulse_csv << "\n";
  std::cout << "samples: " << pulse.grid.n_samples()
            << ", gate time: " << pulse.grid.t_end << "\n";
  std::cout << "closure gap: " << format_double(gap) << "\n";
  std::cout << "first-order error: " << format_double(pi1) << "\n";
  if (closed) {
    const Vec3 area = signed_area(curve);
    std::cout << "signed area: (" << format_double(area.x()) << ", "
              << format_double(area.y()) << ", " << format_double(area.z())
              << "), norm " << format_double(area.norm()) << "\n";
  } else {
    std::cout << "signed area: n/a (curve open at tol " << format_double(tol)
              << ")\n";
  }
  try {
    const AdjointRep gate = implemented_gate(frenet_frame(curve),
                                             pulse.phi.back());
    std::cout << "implemented gate (adjoint rows):\n";
    for (int r = 0; r < 3; ++r) {
      std::cout << "  [" << format_double(gate(r, 0)) << ", "
                << format_double(gate(r, 1)) << ", "
                << format_double(gate(r, 2)) << "]\n";
    }
  } catch (const DegenerateFrameError& e) {
    std::cout << "implemented gate: unavailable (" << e.what() << ")\n";
  }
  std::cout << (closed ? "closed" : "open") << " within tol "
            << format_double(tol) << "\n";
  (void)options;
  return closed ? kExitOk : kExitCheckFailed;
}

// ----------------------------------------------------------------------
// crosstalk-sweep
// ----------------------------------------------------------------------

int cmd_crosstalk_sweep(const GlobalOptions& options) {
  std::string raw;
  const json config = load_config(options, raw);
  reject_unknown(config,
                 {"kappa1_pi", "kappa2_pi", "xi_min", "xi_max", "points",
                  "n_steps", "target"},
                 "config");
  const double k1 = get_number(config, "kappa1_pi", 1.0) * kPi;
  const double k2 = get_number(config, "kappa2_pi", 3.0) * kPi;
  const double xi_min = get_number(config, "xi_min", 1e-3);
  const double xi_max = get_number(config, "xi_max", 1e-1);
  const int points = static_cast<int>(get_integer(config, "points", 10));
  const int n_steps =
      static_cast<int>(get_integer(config, "n_steps", kDefaultSteps));
  const std::string target_name = get_string(config, "target", "xx");

  Matrix target;
  if (target_name == "xx") {
    target = kron(pauli_x(), pauli_x());
  } else if (target_name == "identity") {
    target = identity(4);
  } else {
    throw ParseError("config: target must be 'xx' or 'identity'");
  }

  const auto pair = square_pulse_pair(k1, k2, n_steps);
  const auto table = crosstalk_sweep(pair, Unitary(target),
                                     log_grid(xi_min, xi_max, points),
                                     options.threads);

  const std::string dir = ensure_out_dir(options);
  write_sweep_csv(dir + "/crosstalk_sweep.csv", table,
                  output_header(options, raw));
  json sidecar = header_json(options, raw);
  sidecar["slope"] = table.slope;
  sidecar["intercept"] = table.intercept;
  sidecar["window"] = {{"first", table.window_first},
                       {"last", table.window_last},
                       {"xi_min", table.x[table.window_first]},
                       {"xi_max", table.x[table.window_last]}};
  write_json_file(dir + "/crosstalk_sweep.json", sidecar);
  std::cout << "slope " << format_double(table.slope) << " over window ["
            << format_double(table.x[table.window_first]) << ", "
            << format_double(table.x[table.window_last]) << "]\n";
  return kExitOk;
}

// ----------------------------------------------------------------------
// jp
// ----------------------------------------------------------------------

namespace {

struct JpProtocolRun {
  std::string name;
  std::vector<double> gamma;
  std::vector<ErasureCheckStats> stats;
  ErasureCheckStats zero_noise;
  double slope = 0.0;
};

ThreeStepPulses build_three_step(const json& config, double chi,
                                 const GlobalOptions& options, bool robust) {
  const DesignSpec spec = parse_design(
      config.contains("design") ? config.at("design") : json(), chi, 5.0);
  const double window =
      get_number(config, "swap_window_chi_over_pi", 0.5) * kPi / chi;
  BeamSplitterDrive swap = gaussian_swap_drive(window, spec.sigma_ratio);
  if (!robust) return ThreeStepPulses{naive_zz_half_pulse(chi), swap,
                                      naive_swap_ancilla_pulse(window)};

  ControlPulse zz = [&] {
    const std::string path = get_string(config, "zz_pulse", "");
    if (!path.empty()) return read_pulse_csv(path);
    const auto design = synthesize_zz_half_pulse(
        chi, spec.t_gate, spec.order, options.seed, spec.budget, spec.restarts);
    if (!design.report.converged)
      throw Error("jp: zz-half synthesis did not converge");
    return design.pulse;
  }();
  ControlPulse ancilla = [&] {
    const std::string path = get_string(config, "swap_ancilla_pulse", "");
    if (!path.empty()) return read_pulse_csv(path);
    const auto design = synthesize_swap_ancilla_pulse(
        swap, chi, window, 4, options.seed, 4000, 4, spec.loops);
    if (!design.report.converged)
      throw Error("jp: swap-ancilla synthesis did not converge");
    return design.pulse;
  }();
  return ThreeStepPulses{std::move(zz), std::move(swap), std::move(ancilla)};
}

}  // namespace

int cmd_jp(const GlobalOptions& options) {
  std::string raw;
  const json config = load_config(options, raw);
  reject_unknown(config,
                 {"protocols", "chi", "n_max", "gamma_min", "gamma_max",
                  "gamma_points", "xi_during_swap", "swap_window_chi_over_pi",
                  "zz_pulse", "swap_ancilla_pulse", "design"},
                 "config");
  const double chi = get_number(config, "chi", 1.0);
  const int n_max = static_cast<int>(get_integer(config, "n_max", 4));
  const double gamma_min = get_number(config, "gamma_min", 1e-3) * chi;
  const double gamma_max = get_number(config, "gamma_max", 1e-1) * chi;
  const int gamma_points =
      static_cast<int>(get_integer(config, "gamma_points", 10));
  const double xi_swap = get_number(config, "xi_during_swap", 0.0) * chi;

  std::vector<std::string> protocol_names = {"three_step_robust",
                                             "three_step_naive", "single_shot"};
  if (config.contains("protocols")) {
    if (!config.at("protocols").is_array())
      throw ParseError("config: 'protocols' must be an array");
    protocol_names = config.at("protocols").get<std::vector<std::string>>();
  }

  const auto gamma_grid = log_grid(gamma_min, gamma_max, gamma_points);
  const DualRailParams params(chi, n_max);

  std::vector<JpProtocolRun> runs;
  json warnings = json::array();
  for (const auto& name : protocol_names) {
    JpProtocolRun run;
    run.name = name;
    run.gamma = gamma_grid;

    std::function<ErasureCheckStats(double)> stats_at;
    if (name == "single_shot") {
      stats_at = [&](double gamma) {
        return erasure_check_stats(single_shot_joint_parity(params, gamma),
                                   full_space_inputs(params));
      };
      if (n_max < 4) {
        const DualRailParams bigger(chi, n_max + 2);
        const Unitary a = single_shot_joint_parity(params);
        const Unitary b = single_shot_joint_parity(bigger);
        double delta = 0.0;
        for (int na = 0; na <= 2; ++na)
          for (int nb = 0; na + nb <= 2; ++nb)
            for (int anc = 0; anc < 2; ++anc) {
              if (na > params.n_max || nb > params.n_max) continue;
              const int ia = full_index(params, na, nb, anc);
              const int ib = full_index(bigger, na, nb, anc);
              delta = std::max(delta, std::abs(std::abs(a.matrix()(ia, ia)) -
                                               std::abs(b.matrix()(ib, ib))));
            }
        warnings.push_back(
            "single_shot: n_max=" + std::to_string(n_max) +
            " is below the recommended minimum 4; convergence delta vs n_max=" +
            std::to_string(n_max + 2) + " is " + format_double(delta));
      }
    } else if (name == "three_step_robust" || name == "three_step_naive") {
      const bool robust = (name == "three_step_robust");
      auto pulses = std::make_shared<ThreeStepPulses>(
          build_three_step(config, chi, options, robust));
      stats_at = [&, pulses](double gamma) {
        return erasure_check_stats(
            three_step_protocol(*pulses, chi, gamma, xi_swap), q4_inputs());
      };
    } else {
      throw ParseError("config: unknown protocol '" + name + "'");
    }

    run.zero_noise = stats_at(0.0);
    run.stats.resize(gamma_grid.size());
    parallel_for(static_cast<int>(gamma_grid.size()), options.threads,
                 [&](int i) { run.stats[i] = stats_at(gamma_grid[i]); });
    std::vector<double> worst(gamma_grid.size());
    for (std::size_t i = 0; i < worst.size(); ++i)
      worst[i] = run.stats[i].worst_case();
    run.slope = fit_sweep("gamma", gamma_grid, worst).slope;
    runs.push_back(std::move(run));
  }

  const std::string dir = ensure_out_dir(options);
  json summary = header_json(options, raw);
  summary["chi"] = chi;
  summary["xi_during_swap"] = xi_swap;
  summary["warnings"] = warnings;
  json per_protocol = json::object();
  for (const auto& run : runs) {
    std::ofstream csv(dir + "/jp_" + run.name + ".csv");
    for (const auto& line : output_header(options, raw)) csv << "# " << line << "\n";
    csv << "gamma,false_erase,missed_leak,worst_case\n";
    for (std::size_t i = 0; i < run.gamma.size(); ++i)
      csv << format_double(run.gamma[i]) << ','
          << format_double(run.stats[i].false_erase_prob) << ','
          << format_double(run.stats[i].missed_leak_prob) << ','
          << format_double(run.stats[i].worst_case()) << "\n";
    per_protocol[run.name] = {
        {"slope", run.slope},
        {"false_erase_prob", run.zero_noise.false_erase_prob},
        {"missed_leak_prob", run.zero_noise.missed_leak_prob},
        {"worst_case_zero_noise", run.zero_noise.worst_case()}};
  }
  summary["protocols"] = per_protocol;
  write_json_file(dir + "/jp_summary.json", summary);
  for (const auto& run : runs)
    std::cout << run.name << ": slope " << format_double(run.slope)
              << ", zero-noise worst case "
              << format_double(run.zero_noise.worst_case()) << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------------
// zz
// ----------------------------------------------------------------------

int cmd_zz(const GlobalOptions& options) {
  std::string raw;
  const json config = load_config(options, raw);
  reject_unknown(config,
                 {"theta_pi", "mode", "chi", "gamma", "xi_during_swap",
                  "swap_window_chi_over_pi", "zz_pulse", "swap_ancilla_pulse",
                  "design"},
                 "config");
  if (!config.contains("theta_pi"))
    throw ParseError("config: 'theta_pi' is required");
  const double theta = get_number(config, "theta_pi", 0.5) * kPi;
  const std::string mode = get_string(config, "mode", "ideal");
  const double chi = get_number(config, "chi", 1.0);
  const double gamma = get_number(config, "gamma", 0.0) * chi;
  const double xi_swap = get_number(config, "xi_during_swap", 0.0) * chi;

  // The ideal composition realizes e^{-i theta/2} diag(-1, e^{i theta},
  // e^{i theta}, -1); the simulated steps reach the sign-conjugate parity
  // convention whose double application is plain ZZ(theta). Each mode is
  // scored against its own convention.
  Matrix ideal_target = Matrix::Zero(4, 4);
  const Complex pre = std::exp(Complex(0, -0.5 * theta));
  ideal_target(0, 0) = -pre;
  ideal_target(1, 1) = pre * std::exp(Complex(0, theta));
  ideal_target(2, 2) = pre * std::exp(Complex(0, theta));
  ideal_target(3, 3) = -pre;
  const Matrix simulated_target = zz_theta(theta);

  json summary = header_json(options, raw);
  summary["theta_pi"] = theta / kPi;
  summary["mode"] = mode;

  auto analyze = [&](const Unitary& u_jp, const Matrix& target) {
    const auto analysis = logical_zz_analysis(theta, u_jp);
    json out;
    out["off_block_norm"] = analysis.off_block_norm;
    out["distance_to_target"] =
        max_abs(Matrix(analysis.cavity_unitary - target));
    out["infidelity"] = std::max(
        0.0, 1.0 - average_gate_fidelity(analysis.cavity_unitary, target));
    Vector plus = Vector::Constant(4, 0.5);
    out["concurrence_plus_input"] =
        concurrence(Vector(analysis.cavity_unitary * plus));
    return out;
  };

  if (mode == "ideal") {
    summary["ideal"] =
        analyze(Unitary(ideal_joint_parity_target()), ideal_target);
    const double dist = summary["ideal"]["distance_to_target"].get<double>();
    std::cout << "ideal distance to target: " << format_double(dist) << "\n";
  } else if (mode == "simulated" || mode == "compare") {
    const auto robust_pulses = build_three_step(config, chi, options, true);
    const Unitary robust =
        three_step_protocol(robust_pulses, chi, gamma, xi_swap);
    summary["robust"] = analyze(robust, simulated_target);
    if (mode == "compare") {
      const auto naive_pulses = build_three_step(config, chi, options, false);
      const Unitary naive =
          three_step_protocol(naive_pulses, chi, gamma, xi_swap);
      summary["naive"] = analyze(naive, simulated_target);
      const double fr = summary["robust"]["infidelity"].get<double>();
      const double fn = summary["naive"]["infidelity"].get<double>();
      summary["infidelity_ratio_naive_over_robust"] =
          fn / std::max(fr, 1e-300);
      std::cout << "infidelity robust " << format_double(fr) << ", naive "
                << format_double(fn) << "\n";
    }
  } else {
    throw ParseError("config: mode must be 'ideal', 'simulated' or 'compare'");
  }

  const std::string dir = ensure_out_dir(options);
  write_json_file(dir + "/zz_summary.json", summary);
  return kExitOk;
}

// ----------------------------------------------------------------------
// design
// ----------------------------------------------------------------------

int cmd_design(const GlobalOptions& options) {
  std::string raw;
  const json config = load_config(options, raw);
  reject_unknown(config, {"task", "chi", "design", "weights"}, "config");
  const std::string task = get_string(config, "task", "zz_half");
  const double chi = get_number(config, "chi", 1.0);
  const DesignSpec spec = parse_design(
      config.contains("design") ? config.at("design") : json(), chi,
      task == "zz_half" ? 5.0 : 0.5);

  CostWeights weights;
  if (config.contains("weights")) {
    const json& w = config.at("weights");
    reject_unknown(w, {"gate", "closure", "area", "ortho"}, "weights");
    weights.gate = get_number(w, "gate", weights.gate);
    weights.closure = get_number(w, "closure", weights.closure);
    weights.area = get_number(w, "area", weights.area);
    weights.ortho = get_number(w, "ortho", weights.ortho);
  }

  const std::string dir = ensure_out_dir(options);
  SynthesizedPulse result = [&] {
    if (task == "zz_half") {
      return synthesize_zz_half_pulse(chi, spec.t_gate, spec.order,
                                      options.seed, spec.budget, spec.restarts,
                                      weights);
    }
    if (task == "swap_ancilla") {
      const auto swap = gaussian_swap_drive(spec.t_gate, spec.sigma_ratio);
      return synthesize_swap_ancilla_pulse(swap, chi, spec.t_gate, spec.order,
                                           options.seed, spec.budget,
                                           spec.restarts, spec.loops);
    }
    throw ParseError("config: task must be 'zz_half' or 'swap_ancilla'");
  }();

  write_pulse_csv(dir + "/" + task + "_pulse.csv", result.pulse,
                  output_header(options, raw));
  std::ofstream report(dir + "/" + task + "_report.json");
  report << result.report.to_json();
  std::cout << task << ": " << (result.report.converged ? "converged" : "not converged")
            << ", final cost " << format_double(result.report.final_cost) << "\n";
  return result.report.converged ? kExitOk : kExitCheckFailed;
}

}  // namespace scqc_cli
