#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "quench/dynamics.hpp"
#include "quench/types.hpp"

namespace quench::cli {

inline constexpr const char* kVersion = "quench 1.0.0";

// Full experiment-driver configuration. Defaults reproduce the reference
// experiment parameters; a complete example lives in configs/default.json.
struct RunConfig {
  std::string case_label;          // "", "I", "II", "III", "trivial"
  double xi_so = 400.0;            // rad/s
  double xi0_over_xi_so = 4.0;
  double mz_over_xi0 = 0.0;
  double kz = M_PI / 6.0;          // slice wavenumber
  int slice_n = 24;
  int mesh_n = 48;
  double delta_over_xi0 = 0.1;     // shell offset
  std::string mode = "exact";      // exact | trotter | compiled | noisy
  std::string average = "grid";    // grid | dense
  double tau = 2.5e-4;
  std::vector<double> times;       // empty -> 0.5..5 ms grid
  double noise_over_xi_so = 0.0;
  std::vector<double> noise_levels_over_xi_so;  // for the noise command
  int noise_samples = 100;
  std::uint64_t seed = 1;
  unsigned workers = 0;            // 0 = hardware concurrency
  std::string out_dir = "out";
  double nmr_j_hz = 215.0;
  double nmr_tau_hard = 5e-6;
  std::vector<double> pulse_h;     // h0..h3 for the pulse command

  ModelParams model() const;
  QuenchSpec quench_spec() const;  // mode/average applied
  void validate() const;           // throws std::invalid_argument
  nlohmann::json to_json() const;
};

// Parse "pi/6", "-2pi/3", "0.25", "pi" style angle literals.
double parse_angle(const std::string& text);

// Merge order: defaults, then config file values, then flag overrides.
RunConfig config_from_json(const nlohmann::json& j);

// FNV-1a of the canonical serialized config.
std::uint64_t config_hash(const RunConfig& c);

// "# key: value" metadata comment block placed at the top of every output.
std::string metadata_header(const RunConfig& c);

std::string fmt_g12(double v);  // 12 significant digits, C locale

}  // namespace quench::cli
