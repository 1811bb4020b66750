#include "quench/qops.hpp"

#include <array>
#include <stdexcept>

#include "quench/constants.hpp"

namespace quench {

namespace {

Eigen::Matrix2cd pauli2(Pauli p) {
  const complexd i(0.0, 1.0);
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -i, i, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

Operator4 pauli_tensor(Pauli a, Pauli b) {
  const Eigen::Matrix2cd ma = pauli2(a), mb = pauli2(b);
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = ma(i, j) * mb;
  return out;
}

const Operator4& gamma_op(int i) {
  static const std::array<Operator4, 4> g = {
      pauli_tensor(Pauli::Z, Pauli::X),
      pauli_tensor(Pauli::X, Pauli::I),
      pauli_tensor(Pauli::Y, Pauli::I),
      pauli_tensor(Pauli::Z, Pauli::Z),
  };
  return g.at(static_cast<size_t>(i));
}

const Operator4& chiral_op() {
  static const Operator4 c = pauli_tensor(Pauli::Z, Pauli::Y);
  return c;
}

bool is_hermitian(const Operator4& a, double tol) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Operator4& u, double tol) {
  return (u.adjoint() * u - Operator4::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Operator4 dirac_hamiltonian(const HVector& h) {
  return h.h0 * gamma_op(0) + h.h1 * gamma_op(1) + h.h2 * gamma_op(2) +
         h.h3 * gamma_op(3);
}

Operator4 evolve_closed_form(const HVector& h, double t) {
  const double e = h.gap();
  const double phase = e * t;
  const double c = std::cos(phase);
  // sin(Et)/E evaluated through its series limit near the gap closing
  double sinc_t;
  if (std::abs(phase) < tol::sinc_switch) {
    sinc_t = t * (1.0 - phase * phase / 6.0);
  } else {
    sinc_t = std::sin(phase) / e;
  }
  const complexd i(0.0, 1.0);
  return c * Operator4::Identity() - i * sinc_t * dirac_hamiltonian(h);
}

Operator4 expm_hermitian(const Operator4& H, double t) {
  if (!is_hermitian(H, 1e-9)) {
    throw std::invalid_argument("expm_hermitian: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Operator4> es(H);
  const Eigen::Vector4d ev = es.eigenvalues();
  Eigen::Vector4cd phases;
  const complexd i(0.0, 1.0);
  for (int j = 0; j < 4; ++j) phases(j) = std::exp(-i * ev(j) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double expectation(const Operator4& obs, const DensityMatrix4& rho) {
  if (!is_hermitian(obs, tol::hermitian)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const complexd tr = (obs * rho).trace();
  return tr.real();
}

double expectation(const Operator4& obs, const PureState4& psi) {
  if (!is_hermitian(obs, tol::hermitian)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const complexd val = psi.dot(obs * psi);
  return val.real();
}

double fidelity_unitary(const Operator4& u, const Operator4& v) {
  if (!is_unitary(u, tol::unitary) || !is_unitary(v, tol::unitary)) {
    throw std::invalid_argument("fidelity_unitary: input is not unitary");
  }
  return std::abs((u.adjoint() * v).trace()) / 4.0;
}

}  // namespace quench
