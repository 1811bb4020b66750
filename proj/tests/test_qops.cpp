#include <doctest.h>

#include <random>

#include "quench/constants.hpp"
#include "quench/model.hpp"
#include "quench/qops.hpp"

using namespace quench;

namespace {

HVector random_h(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("pauli_tensor basis action") {
  const Operator4 zx = pauli_tensor(Pauli::Z, Pauli::X);
  // |00> -> |01>, |01> -> |00>, |10> -> -|11>, |11> -> -|10>
  Operator4 expected;
  expected << 0, 1, 0, 0,
              1, 0, 0, 0,
              0, 0, 0, -1,
              0, 0, -1, 0;
  CHECK((zx - expected).cwiseAbs().maxCoeff() == 0.0);

  CHECK((pauli_tensor(Pauli::I, Pauli::I) - Operator4::Identity()).cwiseAbs().maxCoeff() == 0.0);

  const Operator4 zz = pauli_tensor(Pauli::Z, Pauli::Z);
  Eigen::Vector4cd diag;
  diag << 1, -1, -1, 1;
  CHECK((zz - Operator4(diag.asDiagonal())).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pauli_tensor strings are involutory and Hermitian") {
  for (Pauli a : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
    for (Pauli b : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      const Operator4 s = pauli_tensor(a, b);
      CHECK(is_hermitian(s, tol::hermitian));
      CHECK(((s * s) - Operator4::Identity()).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
}

TEST_CASE("Dirac structure: H^2 = E^2 I and eigenvalue degeneracy") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const HVector h = random_h(rng, 2000.0);
    const Operator4 H = dirac_hamiltonian(h);
    const double e2 = h.gap() * h.gap();
    CHECK(((H * H) - e2 * Operator4::Identity()).cwiseAbs().maxCoeff() <
          tol::unitary * std::max(1.0, e2));

    Eigen::SelfAdjointEigenSolver<Operator4> es(H);
    const Eigen::Vector4d ev = es.eigenvalues();
    const double e = h.gap();
    CHECK(std::abs(ev(0) + e) < 1e-9 * std::max(1.0, e));
    CHECK(std::abs(ev(1) + e) < 1e-9 * std::max(1.0, e));
    CHECK(std::abs(ev(2) - e) < 1e-9 * std::max(1.0, e));
    CHECK(std::abs(ev(3) - e) < 1e-9 * std::max(1.0, e));
  }
}

TEST_CASE("evolve_closed_form trivial limits") {
  CHECK((evolve_closed_form({0, 0, 0, 0}, 1.7) - Operator4::Identity())
            .cwiseAbs().maxCoeff() < 1e-15);
  CHECK((evolve_closed_form({3, -1, 2, 5}, 0.0) - Operator4::Identity())
            .cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("closed form matches eigendecomposition on 100 random draws") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ut(0.0, 5e-3);
  for (int i = 0; i < 100; ++i) {
    const HVector h = random_h(rng, 2000.0);
    const double t = ut(rng);
    const Operator4 a = evolve_closed_form(h, t);
    const Operator4 b = expm_hermitian(dirac_hamiltonian(h), t);
    CHECK((a - b).cwiseAbs().maxCoeff() < tol::expm_cross);
  }
}

TEST_CASE("closed form is continuous through the gap closing") {
  // tiny gap: series branch must connect smoothly to the sin branch
  const double t = 1e-3;
  const Operator4 a = evolve_closed_form({1e-7, 0, 0, 0}, t);
  const Operator4 b = evolve_closed_form({1e-4, 0, 0, 0}, t);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6);
  CHECK(is_unitary(a, tol::unitary));
}

TEST_CASE("propagator inverse property") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const HVector h = random_h(rng, 1600.0);
    const Operator4 u = evolve_closed_form(h, 2.5e-3);
    const Operator4 v = evolve_closed_form(h, -2.5e-3);
    CHECK(((u * v) - Operator4::Identity()).cwiseAbs().maxCoeff() < tol::unitary);
  }
}

TEST_CASE("expm_hermitian diagonal case and error path") {
  CHECK((expm_hermitian(Operator4::Zero(), 2.0) - Operator4::Identity())
            .cwiseAbs().maxCoeff() < 1e-15);

  const Operator4 zi = pauli_tensor(Pauli::Z, Pauli::I);
  const Operator4 u = expm_hermitian(zi, M_PI / 2.0);
  const complexd mi(0.0, -1.0), pi_(0.0, 1.0);
  CHECK(std::abs(u(0, 0) - std::exp(mi * (M_PI / 2.0))) < 1e-14);
  CHECK(std::abs(u(2, 2) - std::exp(pi_ * (M_PI / 2.0))) < 1e-14);

  Operator4 bad = Operator4::Zero();
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(expm_hermitian(bad, 1.0), std::invalid_argument);
}

TEST_CASE("expectation values on the pre-quench ground state") {
  const PureState4 psi = prequench_ground_state();
  CHECK(expectation(gamma_op(0), psi) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(expectation(gamma_op(1), psi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(expectation(gamma_op(3), psi) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(expectation(Operator4(complexd(0, 1) * pauli_tensor(Pauli::X, Pauli::I)), psi),
                  std::invalid_argument);
}

TEST_CASE("expectation is linear and normalized") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PureState4 psi;
  psi << complexd(u(rng), u(rng)), complexd(u(rng), u(rng)),
         complexd(u(rng), u(rng)), complexd(u(rng), u(rng));
  psi.normalize();
  const DensityMatrix4 rho = psi * psi.adjoint();
  CHECK(expectation(Operator4::Identity(), rho) == doctest::Approx(1.0).epsilon(1e-12));
  const Operator4 a = pauli_tensor(Pauli::X, Pauli::Z);
  const Operator4 b = pauli_tensor(Pauli::Y, Pauli::Y);
  CHECK(expectation(Operator4(2.0 * a + 3.0 * b), rho) ==
        doctest::Approx(2.0 * expectation(a, rho) + 3.0 * expectation(b, rho))
            .epsilon(1e-12));
}

TEST_CASE("fidelity_unitary basics") {
  const Operator4 u = evolve_closed_form({100, 50, -30, 70}, 1e-3);
  CHECK(fidelity_unitary(u, u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_unitary(Operator4::Identity(), pauli_tensor(Pauli::X, Pauli::I)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(fidelity_unitary(Operator4::Zero(), u), std::invalid_argument);
}
