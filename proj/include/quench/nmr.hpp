#pragma once

#include <string>
#include <variant>
#include <vector>

#include "quench/qops.hpp"
#include "quench/types.hpp"

// NMR layer: Trotter-slice pulse compilation, compiled-sequence simulation,
// pseudo-pure-state preparation by spatial averaging, and spectral readout.

namespace quench::nmr {

struct NmrParams {
  double j_hz = 215.0;       // two-spin coupling
  double tau_hard = 5e-6;    // hard-pulse length (seconds)

  bool valid() const { return j_hz > 0.0 && tau_hard > 0.0; }
};

// Ideal single-qubit rotation about an axis in the xy-plane at azimuth
// `axis_phi`, flip angle theta: exp(-i theta/2 (cos phi sx + sin phi sy)).
struct Rotation {
  int qubit = 1;           // 1 or 2
  double axis_phi = 0.0;   // rad
  double theta = 0.0;      // rad
};

// Free evolution under (pi J / 2) sz sz for `duration` seconds.
struct JDelay {
  double duration = 0.0;
};

// rf pulse on one qubit: exp(-i pi B1 (cos phi sx + sin phi sy) length).
struct HardPulse {
  int qubit = 1;
  double b1_hz = 0.0;
  double phi = 0.0;
  double length = 0.0;
};

// Gradient z-field: zeroes every off-diagonal density-matrix element.
struct GradientCrush {};

using PulsePrimitive = std::variant<Rotation, JDelay, HardPulse, GradientCrush>;

struct PulseSequence {
  // Primitives in operator-product order: ops.front() is the leftmost unitary
  // factor (the last one applied in time).
  std::vector<PulsePrimitive> ops;

  double duration() const;  // ideal rotations and crushes are instantaneous
};

enum class PulseModel { Ideal, FinitePulse };

// Compile one Trotter slice exp(-i h0 szsx tau) exp(-i h3 szsz tau)
// exp(-i (h1 sx + h2 sy) tau) to J-delays, rotation sandwiches and one hard
// pulse. Throws DelayOverflow (std::runtime_error) if a J-delay would exceed
// 50 ms.
PulseSequence compile_slice(const HVector& h, double tau, const NmrParams& nmr);

// Product of the primitives' unitaries. In the finite-pulse model a HardPulse
// evolves jointly under the control and J-coupling Hamiltonians for its
// length; everything else is identical between the two models. Sequences
// containing GradientCrush are not unitary and are rejected here.
Operator4 simulate_sequence(const PulseSequence& seq, const NmrParams& nmr,
                            PulseModel model);

// Apply a sequence (including crushes) to a density matrix, ideal model.
DensityMatrix4 apply_sequence(const PulseSequence& seq, const NmrParams& nmr,
                              const DensityMatrix4& rho);

// Spatial-averaging PPS preparation from the thermal deviation sz1 + 4 sz2.
// Returns (1-eps)/4 I + eps |00><00| up to the sequence's numerical residue.
DensityMatrix4 prepare_pps(const NmrParams& nmr, double eps = 1e-5);

// Spectral peak amplitudes for qubit 1 plus the mapped sigma_z sigma_z value.
struct PeakTable {
  double m0x = 0.0, m1x = 0.0;  // sx (x) |0><0| , sx (x) |1><1|
  double m0y = 0.0, m1y = 0.0;
  double gamma3 = 0.0;          // <sz1 sz2>, read out via R1_y(pi/2) then m0x - m1x
};
PeakTable readout_expectations(const DensityMatrix4& rho);

// Line-oriented text format, one primitive per line:
//   ROT q axis_deg flip_deg | JDELAY seconds | HARD q B1_hz phase_deg seconds | CRUSH
std::string to_text(const PulseSequence& seq);
PulseSequence from_text(const std::string& text);

}  // namespace quench::nmr
