#include "quench/model.hpp"

#include <stdexcept>

#include "quench/constants.hpp"

namespace quench {

HVector h_field(const ModelParams& p, const Momentum& k) {
  if (!p.valid()) throw std::invalid_argument("h_field: invalid model params");
  const Momentum c = k.canonical();
  HVector h;
  h.h0 = p.mz - p.xi0 * (std::cos(c.kx) + std::cos(c.ky) + std::cos(c.kz));
  h.h1 = p.xi_so * std::sin(c.kx);
  h.h2 = p.xi_so * std::sin(c.ky);
  h.h3 = p.xi_so * std::sin(c.kz);
  return h;
}

Operator4 hamiltonian(const ModelParams& p, const Momentum& k) {
  return dirac_hamiltonian(h_field(p, k));
}

PureState4 prequench_ground_state() {
  PureState4 psi;
  const double s = 1.0 / std::sqrt(2.0);
  psi << s, -s, 0.0, 0.0;
  return psi;
}

PhaseClass phase_oracle(const ModelParams& p) {
  if (!p.valid()) throw std::invalid_argument("phase_oracle: invalid params");
  const double a = std::abs(p.mz);
  const double eps = tol::boundary_rel * p.xi0;
  if (std::abs(a - p.xi0) < eps || std::abs(a - 3.0 * p.xi0) < eps) {
    return {0, true};
  }
  if (a < p.xi0) return {2, false};
  if (a < 3.0 * p.xi0) return {-1, false};
  return {0, false};
}

}  // namespace quench
