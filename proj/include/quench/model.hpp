#pragma once

#include "quench/qops.hpp"
#include "quench/types.hpp"

// The AIII-class Bloch Hamiltonian, its band structure, equilibrium phase
// diagram, and the pre-quench (m_z -> +infinity) ground state.

namespace quench {

// h0 = m_z - xi0 (cos kx + cos ky + cos kz), h_{1,2,3} = xi_so sin k_{x,y,z}
HVector h_field(const ModelParams& p, const Momentum& k);

Operator4 hamiltonian(const ModelParams& p, const Momentum& k);

// (|00> - |01>)/sqrt(2), the -1 eigenstate of sz sx on qubit 2.
PureState4 prequench_ground_state();

// Equilibrium classification of m_z. `boundary` is set when |m_z| lies within
// boundary_rel * xi0 of a phase boundary (xi0 or 3 xi0); nu3 is then
// meaningless.
struct PhaseClass {
  int nu3 = 0;
  bool boundary = false;
};
PhaseClass phase_oracle(const ModelParams& p);

}  // namespace quench
