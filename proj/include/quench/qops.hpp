#pragma once

#include <Eigen/Dense>
#include <complex>

#include "quench/types.hpp"

// Exact linear algebra on the fixed two-qubit space. Basis order is
// |00>,|01>,|10>,|11> with qubit 1 the left tensor factor; every sigma-string
// convention in the project hinges on this ordering.

namespace quench {

using Operator4 = Eigen::Matrix4cd;
using PureState4 = Eigen::Vector4cd;
using DensityMatrix4 = Eigen::Matrix4cd;
using complexd = std::complex<double>;

enum class Pauli { I, X, Y, Z };

// sigma_a (x) sigma_b
Operator4 pauli_tensor(Pauli a, Pauli b);

// The fixed operator set of the model: gamma0 = sz sx, gamma1 = sx I,
// gamma2 = sy I, gamma3 = sz sz, and the chiral operator sz sy.
const Operator4& gamma_op(int i);  // i in 0..3
const Operator4& chiral_op();

bool is_hermitian(const Operator4& a, double tol);
bool is_unitary(const Operator4& u, double tol);

// Dirac-form Hamiltonian h0*g0 + h1*g1 + h2*g2 + h3*g3.
Operator4 dirac_hamiltonian(const HVector& h);

// exp(-i H(h) t) in closed form: the four sigma-strings pairwise anticommute,
// so H^2 = E^2 I and exp(-iHt) = cos(Et) I - i sinc evaluation * t * H.
Operator4 evolve_closed_form(const HVector& h, double t);

// exp(-i H t) via eigendecomposition; throws std::invalid_argument when H is
// not Hermitian.
Operator4 expm_hermitian(const Operator4& H, double t);

// Tr(obs * rho); throws on non-Hermitian obs.
double expectation(const Operator4& obs, const DensityMatrix4& rho);
double expectation(const Operator4& obs, const PureState4& psi);

// |Tr(U^dag V)| / 4; throws when either argument is not unitary.
double fidelity_unitary(const Operator4& u, const Operator4& v);

}  // namespace quench
