#include "quench/dynamics.hpp"

#include <bit>
#include <stdexcept>

#include "quench/constants.hpp"
#include "quench/parallel.hpp"

namespace quench {

namespace {

SpinTexture texture_of(const PureState4& psi) {
  return {expectation(gamma_op(1), psi), expectation(gamma_op(2), psi),
          expectation(gamma_op(3), psi)};
}

SpinTexture texture_of(const DensityMatrix4& rho) {
  return {expectation(gamma_op(1), rho), expectation(gamma_op(2), rho),
          expectation(gamma_op(3), rho)};
}

int trotter_steps(double T, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("trotter: tau must be > 0");
  const double ratio = T / tau;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("trotter: T must be a positive integer multiple of tau");
  }
  return static_cast<int>(rounded);
}

std::uint64_t momentum_stream(const Momentum& k) {
  const Momentum c = k.canonical();
  std::uint64_t s = std::bit_cast<std::uint64_t>(c.kx);
  s = keyed_mix(s, std::bit_cast<std::uint64_t>(c.ky),
                std::bit_cast<std::uint64_t>(c.kz));
  return s;
}

}  // namespace

std::vector<double> QuenchSpec::default_times() {
  std::vector<double> t;
  for (int i = 1; i <= 10; ++i) t.push_back(5e-4 * i);
  return t;
}

void QuenchSpec::validate() const {
  if (!params.valid()) throw std::invalid_argument("QuenchSpec: invalid model params");
  if (times.empty()) throw std::invalid_argument("QuenchSpec: times must be nonempty");
  for (size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0) || !std::isfinite(times[i]))
      throw std::invalid_argument("QuenchSpec: times must be positive and finite");
    if (i > 0 && !(times[i] > times[i - 1]))
      throw std::invalid_argument("QuenchSpec: times must be strictly increasing");
  }
  if (mode == EvolutionMode::Trotter || mode == EvolutionMode::Compiled) {
    for (double t : times) trotter_steps(t, tau);
  }
  if (noise_level < 0.0) throw std::invalid_argument("QuenchSpec: negative noise level");
  if (noise_samples < 1) throw std::invalid_argument("QuenchSpec: noise_samples must be >= 1");
}

PureState4 evolve_exact(const ModelParams& p, const Momentum& k, double t) {
  return evolve_closed_form(h_field(p, k), t) * prequench_ground_state();
}

Operator4 trotter_propagator(const ModelParams& p, const Momentum& k, double T,
                             double tau) {
  const int m = trotter_steps(T, tau);
  const HVector h = h_field(p, k);
  // slice factors in the fixed order zx, zz, xy
  const Operator4 slice =
      evolve_closed_form({h.h0, 0.0, 0.0, 0.0}, tau) *
      evolve_closed_form({0.0, 0.0, 0.0, h.h3}, tau) *
      evolve_closed_form({0.0, h.h1, h.h2, 0.0}, tau);
  Operator4 u = Operator4::Identity();
  for (int i = 0; i < m; ++i) u = slice * u;
  return u;
}

Operator4 compiled_propagator(const ModelParams& p, const Momentum& k, double T,
                              double tau, const nmr::NmrParams& nm) {
  const int m = trotter_steps(T, tau);
  const HVector h = h_field(p, k);
  const Operator4 slice =
      nmr::simulate_sequence(nmr::compile_slice(h, tau, nm), nm, nmr::PulseModel::Ideal);
  Operator4 u = Operator4::Identity();
  for (int i = 0; i < m; ++i) u = slice * u;
  return u;
}

SpinTexture spin_texture(const QuenchSpec& spec, const Momentum& k, double t) {
  if (t < 0.0) throw std::invalid_argument("spin_texture: t must be >= 0");
  switch (spec.mode) {
    case EvolutionMode::Exact:
      return texture_of(PureState4(evolve_exact(spec.params, k, t)));
    case EvolutionMode::Trotter:
      return texture_of(PureState4(trotter_propagator(spec.params, k, t, spec.tau) *
                                   prequench_ground_state()));
    case EvolutionMode::Compiled:
      return texture_of(PureState4(
          compiled_propagator(spec.params, k, t, spec.tau, spec.nmr) *
          prequench_ground_state()));
    case EvolutionMode::NoisyExact:
      throw std::invalid_argument(
          "spin_texture: NoisyExact is defined only through dephased_texture");
  }
  throw std::logic_error("spin_texture: unreachable");
}

SpinTexture time_averaged_texture(const QuenchSpec& spec, const Momentum& k) {
  spec.validate();
  if (spec.mode == EvolutionMode::NoisyExact) return dephased_texture(spec, k);
  SpinTexture mean;
  for (double t : spec.times) {
    const SpinTexture s = spin_texture(spec, k, t);
    mean.g1 += s.g1;
    mean.g2 += s.g2;
    mean.g3 += s.g3;
  }
  const double n = static_cast<double>(spec.times.size());
  return {mean.g1 / n, mean.g2 / n, mean.g3 / n};
}

SpinTexture dense_averaged_texture(const ModelParams& p, const Momentum& k,
                                   int samples) {
  if (samples < 1) throw std::invalid_argument("dense average: samples must be >= 1");
  const HVector h = h_field(p, k);
  const double e = h.gap();
  if (!(e > 0.0)) throw std::invalid_argument("dense average: gapless point");
  // precession period is pi/E; an integer period count near 50/E cancels the
  // oscillatory part exactly under uniform midpoint sampling
  const int periods = std::max(1, static_cast<int>(std::round(50.0 / M_PI)));
  const double horizon = periods * M_PI / e;

  const PureState4 psi0 = prequench_ground_state();
  const Operator4 hmat = dirac_hamiltonian(h);
  const PureState4 hpsi = hmat * psi0 / e;
  const complexd i(0.0, 1.0);
  SpinTexture mean;
  for (int j = 0; j < samples; ++j) {
    const double t = (j + 0.5) * horizon / samples;
    const PureState4 psi = std::cos(e * t) * psi0 - i * std::sin(e * t) * hpsi;
    const SpinTexture s = texture_of(psi);
    mean.g1 += s.g1;
    mean.g2 += s.g2;
    mean.g3 += s.g3;
  }
  return {mean.g1 / samples, mean.g2 / samples, mean.g3 / samples};
}

SpinTexture dephased_texture(const QuenchSpec& spec, const Momentum& k) {
  if (spec.noise_level < 0.0)
    throw std::invalid_argument("dephased_texture: negative noise level");
  if (spec.noise_level == 0.0) {
    QuenchSpec clean = spec;
    clean.mode = EvolutionMode::Exact;
    return time_averaged_texture(clean, k);
  }
  const Operator4 hmat = hamiltonian(spec.params, k);
  const Operator4 z1 = pauli_tensor(Pauli::Z, Pauli::I);
  const Operator4 z2 = pauli_tensor(Pauli::I, Pauli::Z);
  const PureState4 psi0 = prequench_ground_state();
  const std::uint64_t stream = momentum_stream(k);

  SpinTexture mc;
  for (int s = 0; s < spec.noise_samples; ++s) {
    const std::uint64_t ctr = 2 * static_cast<std::uint64_t>(s);
    const double d1 =
        spec.noise_level * (2.0 * keyed_uniform(spec.seed, stream, ctr) - 1.0);
    const double d2 =
        spec.noise_level * (2.0 * keyed_uniform(spec.seed, stream, ctr + 1) - 1.0);
    const Operator4 hdec = hmat + d1 * z1 + d2 * z2;

    // one eigendecomposition per draw covers all times
    Eigen::SelfAdjointEigenSolver<Operator4> es(hdec);
    const Eigen::Vector4d ev = es.eigenvalues();
    const PureState4 c0 = es.eigenvectors().adjoint() * psi0;
    const complexd im(0.0, 1.0);
    SpinTexture mean;
    for (double t : spec.times) {
      Eigen::Vector4cd phases;
      for (int j = 0; j < 4; ++j) phases(j) = std::exp(-im * ev(j) * t);
      const PureState4 psi = es.eigenvectors() * phases.cwiseProduct(c0);
      const SpinTexture tx = texture_of(psi);
      mean.g1 += tx.g1;
      mean.g2 += tx.g2;
      mean.g3 += tx.g3;
    }
    const double nt = static_cast<double>(spec.times.size());
    mc.g1 += mean.g1 / nt;
    mc.g2 += mean.g2 / nt;
    mc.g3 += mean.g3 / nt;
  }
  const double ns = static_cast<double>(spec.noise_samples);
  return {mc.g1 / ns, mc.g2 / ns, mc.g3 / ns};
}

}  // namespace quench
