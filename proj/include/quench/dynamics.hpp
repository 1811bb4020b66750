#pragma once

#include <cstdint>
#include <vector>

#include "quench/model.hpp"
#include "quench/nmr.hpp"
#include "quench/qops.hpp"
#include "quench/types.hpp"

// Quench evolution of the pre-quench ground state under the post-quench
// Hamiltonian and time-averaged spin-texture measurement.

namespace quench {

enum class EvolutionMode { Exact, Trotter, Compiled, NoisyExact };

struct QuenchSpec {
  ModelParams params;              // post-quench
  std::vector<double> times;       // seconds
  EvolutionMode mode = EvolutionMode::Exact;
  double tau = 2.5e-4;             // Trotter slice
  double noise_level = 0.0;        // A, rad/s
  int noise_samples = 100;
  std::uint64_t seed = 0;
  nmr::NmrParams nmr;              // used by Compiled mode

  // 0.5 ms .. 5 ms step 0.5 ms
  static std::vector<double> default_times();
  void validate() const;  // throws std::invalid_argument
};

PureState4 evolve_exact(const ModelParams& p, const Momentum& k, double t);

// (e^{-i h0 szsx tau} e^{-i h3 szsz tau} e^{-i (h1 sx + h2 sy) tau})^m with
// m = T/tau; rejects non-integer m.
Operator4 trotter_propagator(const ModelParams& p, const Momentum& k, double T,
                             double tau);

// Same product built from compiled pulse sequences (ideal pulse model).
Operator4 compiled_propagator(const ModelParams& p, const Momentum& k, double T,
                              double tau, const nmr::NmrParams& nmr);

// <gamma_i> on the state evolved for time t in the given mode. NoisyExact is
// excluded here (noise only enters through the Monte-Carlo average below).
SpinTexture spin_texture(const QuenchSpec& spec, const Momentum& k, double t);

// Arithmetic mean of spin_texture over spec.times. In NoisyExact mode this is
// the seeded Monte-Carlo mean over dephasing draws.
SpinTexture time_averaged_texture(const QuenchSpec& spec, const Momentum& k);

// Theory oracle: midpoint average of the exact-mode texture over an integer
// number of precession periods spanning roughly 50/E, 1000 samples.
SpinTexture dense_averaged_texture(const ModelParams& p, const Momentum& k,
                                   int samples = 1000);

// Monte-Carlo mean over noise_samples quenched draws of (d_z1, d_z2), each
// uniform on (-A, A), of the time-averaged texture under
// H + d_z1 sz1 + d_z2 sz2. The noise stream is keyed by (seed, momentum,
// sample index), so results do not depend on sweep scheduling.
SpinTexture dephased_texture(const QuenchSpec& spec, const Momentum& k);

}  // namespace quench
