#include "quench/run_config.hpp"

#include <cstdio>
#include <stdexcept>

namespace quench::cli {

namespace {

const std::vector<std::pair<std::string, double>> kCaseMz = {
    {"I", 0.0}, {"II", 1.3}, {"III", -1.3}, {"trivial", 4.0}};

}  // namespace

ModelParams RunConfig::model() const {
  ModelParams p;
  p.xi_so = xi_so;
  p.xi0 = xi0_over_xi_so * xi_so;
  p.mz = mz_over_xi0 * p.xi0;
  return p;
}

QuenchSpec RunConfig::quench_spec() const {
  QuenchSpec spec;
  spec.params = model();
  spec.times = times.empty() ? QuenchSpec::default_times() : times;
  spec.tau = tau;
  spec.seed = seed;
  spec.noise_level = noise_over_xi_so * xi_so;
  spec.noise_samples = noise_samples;
  spec.nmr.j_hz = nmr_j_hz;
  spec.nmr.tau_hard = nmr_tau_hard;
  if (mode == "exact") spec.mode = EvolutionMode::Exact;
  else if (mode == "trotter") spec.mode = EvolutionMode::Trotter;
  else if (mode == "compiled") spec.mode = EvolutionMode::Compiled;
  else if (mode == "noisy") spec.mode = EvolutionMode::NoisyExact;
  else throw std::invalid_argument("config: unknown mode '" + mode + "'");
  return spec;
}

void RunConfig::validate() const {
  if (!(xi_so > 0.0) || !(xi0_over_xi_so > 0.0))
    throw std::invalid_argument("config: xi_so and xi0 must be positive");
  if (slice_n < 8) throw std::invalid_argument("config: slice grid must be >= 8");
  if (mesh_n < 16) throw std::invalid_argument("config: mesh grid must be >= 16");
  if (!(delta_over_xi0 > 0.0) || delta_over_xi0 >= 0.5)
    throw std::invalid_argument("config: delta must be in (0, 0.5) xi0");
  if (average != "grid" && average != "dense")
    throw std::invalid_argument("config: average must be 'grid' or 'dense'");
  for (double a : noise_levels_over_xi_so)
    if (a < 0.0) throw std::invalid_argument("config: negative noise level");
  quench_spec().validate();  // covers mode, times, tau, noise fields
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["case"] = case_label;
  j["xi_so"] = xi_so;
  j["xi0_over_xi_so"] = xi0_over_xi_so;
  j["mz_over_xi0"] = mz_over_xi0;
  j["kz"] = kz;
  j["slice_n"] = slice_n;
  j["mesh_n"] = mesh_n;
  j["delta_over_xi0"] = delta_over_xi0;
  j["mode"] = mode;
  j["average"] = average;
  j["tau"] = tau;
  j["times"] = times.empty() ? QuenchSpec::default_times() : times;
  j["noise_over_xi_so"] = noise_over_xi_so;
  j["noise_levels_over_xi_so"] = noise_levels_over_xi_so;
  j["noise_samples"] = noise_samples;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["nmr"] = {{"j_hz", nmr_j_hz}, {"tau_hard", nmr_tau_hard}};
  if (!pulse_h.empty()) j["pulse_h"] = pulse_h;
  return j;
}

double parse_angle(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty angle literal");

  double sign = 1.0;
  size_t pos = 0;
  if (s[0] == '+' || s[0] == '-') {
    sign = (s[0] == '-') ? -1.0 : 1.0;
    ++pos;
  }
  const size_t pi_pos = s.find("pi", pos);
  if (pi_pos == std::string::npos) {
    size_t used = 0;
    const double v = std::stod(s.substr(pos), &used);
    if (used != s.size() - pos) throw std::invalid_argument("bad angle literal: " + text);
    return sign * v;
  }
  double coef = 1.0;
  if (pi_pos > pos) {
    size_t used = 0;
    coef = std::stod(s.substr(pos, pi_pos - pos), &used);
    if (used != pi_pos - pos) throw std::invalid_argument("bad angle literal: " + text);
  }
  double divisor = 1.0;
  size_t rest = pi_pos + 2;
  if (rest < s.size()) {
    if (s[rest] != '/') throw std::invalid_argument("bad angle literal: " + text);
    size_t used = 0;
    divisor = std::stod(s.substr(rest + 1), &used);
    if (used != s.size() - rest - 1 || divisor == 0.0)
      throw std::invalid_argument("bad angle literal: " + text);
  }
  return sign * coef * M_PI / divisor;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  auto angle = [&](const nlohmann::json& v) -> double {
    if (v.is_string()) return parse_angle(v.get<std::string>());
    return v.get<double>();
  };
  if (j.contains("case")) {
    c.case_label = j["case"].get<std::string>();
    bool known = c.case_label.empty();
    for (const auto& [label, mz] : kCaseMz) {
      if (label == c.case_label) {
        c.mz_over_xi0 = mz;
        known = true;
      }
    }
    if (!known) throw std::invalid_argument("config: unknown case '" + c.case_label + "'");
  }
  if (j.contains("xi_so")) c.xi_so = j["xi_so"].get<double>();
  if (j.contains("xi0_over_xi_so")) c.xi0_over_xi_so = j["xi0_over_xi_so"].get<double>();
  if (j.contains("mz_over_xi0")) c.mz_over_xi0 = j["mz_over_xi0"].get<double>();
  if (j.contains("kz")) c.kz = angle(j["kz"]);
  if (j.contains("slice_n")) c.slice_n = j["slice_n"].get<int>();
  if (j.contains("mesh_n")) c.mesh_n = j["mesh_n"].get<int>();
  if (j.contains("delta_over_xi0")) c.delta_over_xi0 = j["delta_over_xi0"].get<double>();
  if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
  if (j.contains("average")) c.average = j["average"].get<std::string>();
  if (j.contains("tau")) c.tau = j["tau"].get<double>();
  if (j.contains("times")) c.times = j["times"].get<std::vector<double>>();
  if (j.contains("noise_over_xi_so")) c.noise_over_xi_so = j["noise_over_xi_so"].get<double>();
  if (j.contains("noise_levels_over_xi_so"))
    c.noise_levels_over_xi_so = j["noise_levels_over_xi_so"].get<std::vector<double>>();
  if (j.contains("noise_samples")) c.noise_samples = j["noise_samples"].get<int>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("workers")) c.workers = j["workers"].get<unsigned>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  if (j.contains("nmr")) {
    const auto& n = j["nmr"];
    if (n.contains("j_hz")) c.nmr_j_hz = n["j_hz"].get<double>();
    if (n.contains("tau_hard")) c.nmr_tau_hard = n["tau_hard"].get<double>();
  }
  if (j.contains("pulse_h")) c.pulse_h = j["pulse_h"].get<std::vector<double>>();
  return c;
}

std::uint64_t config_hash(const RunConfig& c) {
  const std::string text = c.to_json().dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char byte : text) {
    h ^= byte;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string metadata_header(const RunConfig& c) {
  char buf[128];
  std::string out;
  std::snprintf(buf, sizeof buf, "# version: %s\n", kVersion);
  out += buf;
  std::snprintf(buf, sizeof buf, "# config_hash: %016llx\n",
                static_cast<unsigned long long>(config_hash(c)));
  out += buf;
  std::snprintf(buf, sizeof buf, "# seed: %llu\n",
                static_cast<unsigned long long>(c.seed));
  out += buf;
  return out;
}

std::string fmt_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace quench::cli
