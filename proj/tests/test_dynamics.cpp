#include <doctest.h>

#include <random>

#include "quench/constants.hpp"
#include "quench/dynamics.hpp"

using namespace quench;

namespace {

ModelParams params(double mz_over_xi0) {
  ModelParams p;
  p.xi_so = 400.0;
  p.xi0 = 1600.0;
  p.mz = mz_over_xi0 * p.xi0;
  return p;
}

QuenchSpec base_spec(double mz_over_xi0) {
  QuenchSpec s;
  s.params = params(mz_over_xi0);
  s.times = QuenchSpec::default_times();
  return s;
}

}  // namespace

TEST_CASE("default time grid is 0.5 ms .. 5 ms in 0.5 ms steps") {
  const auto t = QuenchSpec::default_times();
  REQUIRE(t.size() == 10);
  CHECK(t.front() == doctest::Approx(5e-4));
  CHECK(t.back() == doctest::Approx(5e-3));
  for (size_t i = 1; i < t.size(); ++i)
    CHECK(t[i] - t[i - 1] == doctest::Approx(5e-4));
}

TEST_CASE("spec validation error paths") {
  QuenchSpec s = base_spec(0.86);
  CHECK_NOTHROW(s.validate());

  QuenchSpec empty = s;
  empty.times.clear();
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

  QuenchSpec unsorted = s;
  std::swap(unsorted.times[2], unsorted.times[3]);
  CHECK_THROWS_AS(unsorted.validate(), std::invalid_argument);

  QuenchSpec bad_tau = s;
  bad_tau.mode = EvolutionMode::Trotter;
  bad_tau.tau = 3e-4;  // 0.5 ms is not an integer multiple
  CHECK_THROWS_AS(bad_tau.validate(), std::invalid_argument);

  QuenchSpec bad_noise = s;
  bad_noise.noise_level = -1.0;
  CHECK_THROWS_AS(bad_noise.validate(), std::invalid_argument);
}

TEST_CASE("exact evolution preserves the norm and starts at the ground state") {
  const ModelParams p = params(0.86);
  const Momentum k{0.4, -1.1, 0.9};
  CHECK((evolve_exact(p, k, 0.0) - prequench_ground_state()).norm() < 1e-14);
  for (double t : {5e-4, 2e-3, 5e-3}) {
    CHECK(std::abs(evolve_exact(p, k, t).norm() - 1.0) < tol::state_norm);
  }
}

TEST_CASE("dense average reproduces -h0 h_i / E^2") {
  const ModelParams p = params(0.86);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (int i = 0; i < 15; ++i) {
    const Momentum k{u(rng), u(rng), u(rng)};
    const HVector h = h_field(p, k);
    const double e2 = h.gap() * h.gap();
    const SpinTexture s = dense_averaged_texture(p, k);
    CHECK(s.g1 == doctest::Approx(-h.h0 * h.h1 / e2).epsilon(1e-10));
    CHECK(s.g2 == doctest::Approx(-h.h0 * h.h2 / e2).epsilon(1e-10));
    CHECK(s.g3 == doctest::Approx(-h.h0 * h.h3 / e2).epsilon(1e-10));
  }
}

TEST_CASE("dense average vanishes on the band-inversion surface") {
  // h0 = 0 at (pi/2, -pi/2, pi/2) for m_z = 0
  const ModelParams p = params(0.0);
  const SpinTexture s = dense_averaged_texture(p, {M_PI / 2, -M_PI / 2, M_PI / 2});
  CHECK(std::abs(s.g1) < 1e-10);
  CHECK(std::abs(s.g2) < 1e-10);
  CHECK(std::abs(s.g3) < 1e-10);
}

TEST_CASE("10-point grid average tracks the theory value away from resonance") {
  const ModelParams p = params(0.86);
  const Momentum k{0.9, 0.3, -0.5};
  const HVector h = h_field(p, k);
  const double e2 = h.gap() * h.gap();
  QuenchSpec spec = base_spec(0.86);
  const SpinTexture s = time_averaged_texture(spec, k);
  CHECK(s.g1 == doctest::Approx(-h.h0 * h.h1 / e2).epsilon(0.2));
  CHECK(s.g3 == doctest::Approx(-h.h0 * h.h3 / e2).epsilon(0.2));
}

TEST_CASE("trotter propagator: step validation and the m = 1 slice") {
  const ModelParams p = params(1.3);
  const Momentum k{0.7, -0.2, 1.4};
  CHECK_THROWS_AS(trotter_propagator(p, k, 3.3e-4, 2.5e-4), std::invalid_argument);
  CHECK_THROWS_AS(trotter_propagator(p, k, 2.5e-4, 0.0), std::invalid_argument);

  const HVector h = h_field(p, k);
  const double tau = 2.5e-4;
  const Operator4 slice = evolve_closed_form({h.h0, 0, 0, 0}, tau) *
                          evolve_closed_form({0, 0, 0, h.h3}, tau) *
                          evolve_closed_form({0, h.h1, h.h2, 0}, tau);
  CHECK((trotter_propagator(p, k, tau, tau) - slice).cwiseAbs().maxCoeff() < 1e-13);
  const Operator4 u2 = trotter_propagator(p, k, 2 * tau, tau);
  CHECK((u2 - slice * slice).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("trotter fidelity against the exact propagator stays high") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  for (double mz : {0.0, 0.86, 1.3}) {
    const ModelParams p = params(mz);
    double mean = 0.0;
    for (int i = 0; i < 10; ++i) {
      const Momentum k{u(rng), u(rng), u(rng)};
      const double T = 5e-3;
      const Operator4 ut = trotter_propagator(p, k, T, 2.5e-4);
      const Operator4 ue = evolve_closed_form(h_field(p, k), T);
      const double f = fidelity_unitary(ue, ut);
      CHECK(f >= 0.97);  // worst case over the zone at the longest time
      mean += f / 10.0;
    }
    CHECK(mean >= 0.985);
  }
}

TEST_CASE("compiled propagator equals the trotter propagator with ideal pulses") {
  const nmr::NmrParams nm;
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-M_PI, M_PI);
  const ModelParams p = params(0.86);
  for (int i = 0; i < 10; ++i) {
    const Momentum k{u(rng), u(rng), u(rng)};
    const Operator4 ut = trotter_propagator(p, k, 2e-3, 2.5e-4);
    const Operator4 uc = compiled_propagator(p, k, 2e-3, 2.5e-4, nm);
    CHECK(fidelity_unitary(ut, uc) >= 1.0 - 1e-9);
  }
}

TEST_CASE("spin_texture rejects the noisy mode") {
  QuenchSpec spec = base_spec(0.86);
  spec.mode = EvolutionMode::NoisyExact;
  CHECK_THROWS_AS(spin_texture(spec, {0.1, 0.2, 0.3}, 1e-3), std::invalid_argument);
}

TEST_CASE("dephased texture: zero noise reduces to the exact average") {
  QuenchSpec spec = base_spec(0.86);
  spec.mode = EvolutionMode::NoisyExact;
  spec.noise_level = 0.0;
  spec.seed = 42;
  const Momentum k{0.8, -0.4, 1.1};

  QuenchSpec exact = base_spec(0.86);
  const SpinTexture a = time_averaged_texture(spec, k);
  const SpinTexture b = time_averaged_texture(exact, k);
  CHECK(a.g1 == doctest::Approx(b.g1).epsilon(1e-14));
  CHECK(a.g2 == doctest::Approx(b.g2).epsilon(1e-14));
  CHECK(a.g3 == doctest::Approx(b.g3).epsilon(1e-14));
}

TEST_CASE("dephased texture is seeded-deterministic and perturbative in A") {
  QuenchSpec spec = base_spec(0.86);
  spec.mode = EvolutionMode::NoisyExact;
  spec.noise_level = 0.1 * spec.params.xi_so;
  spec.noise_samples = 50;
  spec.seed = 7;
  const Momentum k{0.8, -0.4, 1.1};

  const SpinTexture a = dephased_texture(spec, k);
  const SpinTexture b = dephased_texture(spec, k);
  CHECK(a.g1 == b.g1);
  CHECK(a.g2 == b.g2);
  CHECK(a.g3 == b.g3);

  QuenchSpec other_seed = spec;
  other_seed.seed = 8;
  const SpinTexture c = dephased_texture(other_seed, k);
  CHECK(a.g1 != c.g1);  // different draws, same distribution

  QuenchSpec clean = base_spec(0.86);
  const SpinTexture ref = time_averaged_texture(clean, k);
  CHECK(std::abs(a.g1 - ref.g1) < 0.1);
  CHECK(std::abs(a.g3 - ref.g3) < 0.1);
}
