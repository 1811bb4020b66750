#include <doctest.h>

#include <random>

#include "quench/constants.hpp"
#include "quench/model.hpp"

using namespace quench;

namespace {

ModelParams params(double mz_over_xi0) {
  ModelParams p;
  p.xi_so = 400.0;
  p.xi0 = 1600.0;
  p.mz = mz_over_xi0 * p.xi0;
  return p;
}

}  // namespace

TEST_CASE("h_field at high-symmetry points") {
  const ModelParams p1 = params(0.86);
  const HVector a = h_field(p1, {0, 0, 0});
  CHECK(a.h0 == doctest::Approx(-2.14 * p1.xi0).epsilon(1e-12));
  CHECK(a.h1 == doctest::Approx(0.0));
  CHECK(a.h2 == doctest::Approx(0.0));
  CHECK(a.h3 == doctest::Approx(0.0));

  const ModelParams p0 = params(0.0);
  const HVector b = h_field(p0, {M_PI / 2, -M_PI / 2, M_PI / 2});
  CHECK(b.h0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(b.h1 == doctest::Approx(p0.xi_so));
  CHECK(b.h2 == doctest::Approx(-p0.xi_so));
  CHECK(b.h3 == doctest::Approx(p0.xi_so));

  const ModelParams p2 = params(1.3);
  const HVector c = h_field(p2, {M_PI, M_PI, M_PI});
  CHECK(c.h0 == doctest::Approx(4.3 * p2.xi0).epsilon(1e-12));
  CHECK(std::abs(c.h1) < 1e-9);
}

TEST_CASE("h_field is 2pi-periodic and gap is consistent") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const ModelParams p = params(0.86);
  for (int i = 0; i < 30; ++i) {
    const Momentum k{u(rng), u(rng), u(rng)};
    const Momentum shifted{k.kx + 2 * M_PI, k.ky - 4 * M_PI, k.kz + 2 * M_PI};
    const HVector a = h_field(p, k), b = h_field(p, shifted);
    CHECK(a.h0 == doctest::Approx(b.h0).epsilon(1e-12));
    CHECK(a.h3 == doctest::Approx(b.h3).epsilon(1e-12));
    const double sum = a.h0 * a.h0 + a.h1 * a.h1 + a.h2 * a.h2 + a.h3 * a.h3;
    CHECK(a.gap() * a.gap() == doctest::Approx(sum).epsilon(tol::gap_rel));
  }
}

TEST_CASE("hamiltonian matches the sigma-string expansion and has the Dirac spectrum") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const ModelParams p = params(1.3);
  for (int i = 0; i < 20; ++i) {
    const Momentum k{u(rng), u(rng), u(rng)};
    const HVector h = h_field(p, k);
    const Operator4 H = hamiltonian(p, k);
    const Operator4 rebuilt = h.h0 * pauli_tensor(Pauli::Z, Pauli::X) +
                              h.h1 * pauli_tensor(Pauli::X, Pauli::I) +
                              h.h2 * pauli_tensor(Pauli::Y, Pauli::I) +
                              h.h3 * pauli_tensor(Pauli::Z, Pauli::Z);
    CHECK((H - rebuilt).cwiseAbs().maxCoeff() < 1e-12 * std::max(1.0, h.gap()));

    Eigen::SelfAdjointEigenSolver<Operator4> es(H);
    const double e = h.gap();
    CHECK(es.eigenvalues()(0) == doctest::Approx(-e).epsilon(1e-9));
    CHECK(es.eigenvalues()(1) == doctest::Approx(-e).epsilon(1e-9));
    CHECK(es.eigenvalues()(3) == doctest::Approx(e).epsilon(1e-9));
  }
  const HVector unit{1, 0, 0, 0};
  CHECK((dirac_hamiltonian(unit) - pauli_tensor(Pauli::Z, Pauli::X)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("hamiltonian anticommutes with the chiral operator") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const ModelParams p = params(0.86);
  const Operator4& gamma = chiral_op();
  for (int i = 0; i < 20; ++i) {
    const Momentum k{u(rng), u(rng), u(rng)};
    const Operator4 H = hamiltonian(p, k);
    CHECK((H * gamma + gamma * H).cwiseAbs().maxCoeff() <
          1e-12 * std::max(1.0, H.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("prequench ground state") {
  const PureState4 psi = prequench_ground_state();
  CHECK(std::abs(psi.norm() - 1.0) < tol::state_norm);
  CHECK(expectation(pauli_tensor(Pauli::Z, Pauli::X), psi) == doctest::Approx(-1.0));
  CHECK(expectation(pauli_tensor(Pauli::Z, Pauli::I), psi) == doctest::Approx(1.0));
  CHECK(expectation(pauli_tensor(Pauli::I, Pauli::X), psi) == doctest::Approx(-1.0));

  // overlap with the numeric ground subspace at large finite m_z
  ModelParams p = params(100.0);
  const Momentum k{0.3, 0.7, -1.1};
  Eigen::SelfAdjointEigenSolver<Operator4> es(hamiltonian(p, k));
  const auto v0 = es.eigenvectors().col(0);
  const auto v1 = es.eigenvectors().col(1);
  const double overlap = std::sqrt(std::norm(v0.dot(psi)) + std::norm(v1.dot(psi)));
  CHECK(overlap >= 0.999);
}

TEST_CASE("phase oracle regions and boundaries") {
  CHECK(phase_oracle(params(0.0)).nu3 == 2);
  CHECK(phase_oracle(params(0.86)).nu3 == 2);
  CHECK(phase_oracle(params(1.3)).nu3 == -1);
  CHECK(phase_oracle(params(-1.3)).nu3 == -1);
  CHECK(phase_oracle(params(4.0)).nu3 == 0);
  CHECK(phase_oracle(params(-4.0)).nu3 == 0);
  CHECK(phase_oracle(params(1.0)).boundary);
  CHECK(phase_oracle(params(-3.0)).boundary);
  CHECK_FALSE(phase_oracle(params(1.3)).boundary);
}

TEST_CASE("gap stays open at the experimental m_z values") {
  for (double mz : {0.0, 0.86, 1.3, -1.3}) {
    const ModelParams p = params(mz);
    double min_gap = 1e300;
    const int n = 48;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          const Momentum k{-M_PI + 2 * M_PI * i / n, -M_PI + 2 * M_PI * j / n,
                           -M_PI + 2 * M_PI * l / n};
          min_gap = std::min(min_gap, h_field(p, k).gap());
        }
    CHECK(min_gap > 0.0);
  }
}
