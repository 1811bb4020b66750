#include "quench/nmr.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "quench/constants.hpp"

namespace quench::nmr {

namespace {

constexpr double kMaxDelay = 50e-3;

Operator4 single_qubit(int qubit, const Eigen::Matrix2cd& u) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd& a = (qubit == 1) ? u : id;
  const Eigen::Matrix2cd& b = (qubit == 1) ? id : u;
  Operator4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix2cd xy_rotation(double axis_phi, double theta) {
  const complexd i(0.0, 1.0);
  Eigen::Matrix2cd axis;
  axis << 0.0, std::cos(axis_phi) - i * std::sin(axis_phi),
      std::cos(axis_phi) + i * std::sin(axis_phi), 0.0;
  return std::cos(theta / 2.0) * Eigen::Matrix2cd::Identity() -
         i * std::sin(theta / 2.0) * axis;
}

Operator4 j_coupling(double j_hz) {
  return (M_PI * j_hz / 2.0) * pauli_tensor(Pauli::Z, Pauli::Z);
}

Operator4 rotation_unitary(const Rotation& r) {
  if (r.qubit != 1 && r.qubit != 2)
    throw std::invalid_argument("Rotation: qubit index must be 1 or 2");
  return single_qubit(r.qubit, xy_rotation(r.axis_phi, r.theta));
}

Operator4 jdelay_unitary(const JDelay& d, const NmrParams& nmr) {
  if (d.duration < 0.0) throw std::invalid_argument("JDelay: negative duration");
  return expm_hermitian(j_coupling(nmr.j_hz), d.duration);
}

Operator4 hard_pulse_unitary(const HardPulse& p, const NmrParams& nmr,
                             PulseModel model) {
  if (p.qubit != 1 && p.qubit != 2)
    throw std::invalid_argument("HardPulse: qubit index must be 1 or 2");
  const complexd i(0.0, 1.0);
  const Eigen::Matrix2cd drive =
      std::cos(p.phi) * (Eigen::Matrix2cd() << 0, 1, 1, 0).finished() +
      std::sin(p.phi) * (Eigen::Matrix2cd() << 0, -i, i, 0).finished();
  const Operator4 control = M_PI * p.b1_hz * single_qubit(p.qubit, drive);
  if (model == PulseModel::Ideal) {
    return expm_hermitian(control, p.length);
  }
  return expm_hermitian(control + j_coupling(nmr.j_hz), p.length);
}

}  // namespace

double PulseSequence::duration() const {
  double total = 0.0;
  for (const auto& op : ops) {
    if (const auto* d = std::get_if<JDelay>(&op)) total += d->duration;
    if (const auto* h = std::get_if<HardPulse>(&op)) total += h->length;
  }
  return total;
}

PulseSequence compile_slice(const HVector& h, double tau, const NmrParams& nmr) {
  if (tau <= 0.0) throw std::invalid_argument("compile_slice: tau must be > 0");
  if (!nmr.valid()) throw std::invalid_argument("compile_slice: bad NMR params");

  auto delay_for = [&](double coeff) {
    const double t = 2.0 * std::abs(coeff) * tau / (M_PI * nmr.j_hz);
    if (t > kMaxDelay)
      throw std::runtime_error("compile_slice: DelayOverflow, J-delay exceeds 50 ms");
    return t;
  };

  PulseSequence seq;
  const double half_pi = M_PI / 2.0;

  // zx term: y-sandwiched J-delay turns sz sz into sz sx; sandwich direction
  // carries the sign of h0.
  if (h.h0 != 0.0) {
    const double s = (h.h0 > 0.0) ? 1.0 : -1.0;
    seq.ops.push_back(Rotation{2, half_pi, s * half_pi});
    seq.ops.push_back(JDelay{delay_for(h.h0)});
    seq.ops.push_back(Rotation{2, half_pi, -s * half_pi});
  }

  // zz term: bare J-delay for h3 > 0, x-sandwich flips the sign for h3 < 0.
  if (h.h3 != 0.0) {
    if (h.h3 > 0.0) {
      seq.ops.push_back(JDelay{delay_for(h.h3)});
    } else {
      seq.ops.push_back(Rotation{2, 0.0, M_PI});
      seq.ops.push_back(JDelay{delay_for(h.h3)});
      seq.ops.push_back(Rotation{2, 0.0, -M_PI});
    }
  }

  // xy term: one hard pulse on qubit 1. B1 is scaled by tau/tau_hard so the
  // short pulse accumulates the full slice angle sqrt(h1^2+h2^2)*tau.
  const double hxy = std::hypot(h.h1, h.h2);
  if (hxy != 0.0) {
    HardPulse p;
    p.qubit = 1;
    p.b1_hz = hxy * tau / (M_PI * nmr.tau_hard);
    p.phi = std::atan2(h.h2, h.h1);
    p.length = nmr.tau_hard;
    seq.ops.push_back(p);
  }
  return seq;
}

Operator4 simulate_sequence(const PulseSequence& seq, const NmrParams& nmr,
                            PulseModel model) {
  Operator4 u = Operator4::Identity();
  for (const auto& op : seq.ops) {
    if (std::holds_alternative<GradientCrush>(op)) {
      throw std::invalid_argument("simulate_sequence: GradientCrush is not unitary");
    } else if (const auto* r = std::get_if<Rotation>(&op)) {
      u = u * rotation_unitary(*r);
    } else if (const auto* d = std::get_if<JDelay>(&op)) {
      u = u * jdelay_unitary(*d, nmr);
    } else if (const auto* p = std::get_if<HardPulse>(&op)) {
      u = u * hard_pulse_unitary(*p, nmr, model);
    }
  }
  return u;
}

DensityMatrix4 apply_sequence(const PulseSequence& seq, const NmrParams& nmr,
                              const DensityMatrix4& rho) {
  DensityMatrix4 out = rho;
  // ops are in operator-product order; time order is back to front
  for (auto it = seq.ops.rbegin(); it != seq.ops.rend(); ++it) {
    if (std::holds_alternative<GradientCrush>(*it)) {
      const Eigen::Vector4cd diag = out.diagonal();
      out = diag.asDiagonal();
    } else if (const auto* r = std::get_if<Rotation>(&*it)) {
      const Operator4 u = rotation_unitary(*r);
      out = u * out * u.adjoint();
    } else if (const auto* d = std::get_if<JDelay>(&*it)) {
      const Operator4 u = jdelay_unitary(*d, nmr);
      out = u * out * u.adjoint();
    } else if (const auto* p = std::get_if<HardPulse>(&*it)) {
      const Operator4 u = hard_pulse_unitary(*p, nmr, PulseModel::Ideal);
      out = u * out * u.adjoint();
    }
  }
  return out;
}

DensityMatrix4 prepare_pps(const NmrParams& nmr, double eps) {
  if (eps <= 0.0 || eps >= 1.0)
    throw std::invalid_argument("prepare_pps: eps must be in (0, 1)");
  // Thermal deviation sz1 + 4 sz2 (1:4 gyromagnetic ratio), scaled so the
  // final pseudo-pure state carries polarization eps.
  const DensityMatrix4 rho_eq =
      0.25 * Operator4::Identity() +
      (eps / 4.0) * (pauli_tensor(Pauli::Z, Pauli::I) +
                     4.0 * pauli_tensor(Pauli::I, Pauli::Z));

  const double qpi = M_PI / 4.0;
  PulseSequence seq;
  // product order (time runs back to front):
  seq.ops.push_back(GradientCrush{});
  seq.ops.push_back(Rotation{2, M_PI / 2.0, qpi});        // R2_y(pi/4)
  seq.ops.push_back(JDelay{1.0 / (2.0 * nmr.j_hz)});      // U(1/(2J))
  seq.ops.push_back(Rotation{2, M_PI, qpi});              // R2_{-x}(pi/4)
  seq.ops.push_back(GradientCrush{});
  seq.ops.push_back(Rotation{2, 0.0, M_PI / 3.0});        // R2_x(pi/3)
  return apply_sequence(seq, nmr, rho_eq);
}

PeakTable readout_expectations(const DensityMatrix4& rho) {
  const Operator4 sx1 = pauli_tensor(Pauli::X, Pauli::I);
  const Operator4 sy1 = pauli_tensor(Pauli::Y, Pauli::I);
  Operator4 p0 = Operator4::Zero(), p1 = Operator4::Zero();
  // projectors I (x) |0><0| and I (x) |1><1|
  p0(0, 0) = p0(2, 2) = 1.0;
  p1(1, 1) = p1(3, 3) = 1.0;

  PeakTable t;
  t.m0x = expectation(Operator4(0.5 * (sx1 * p0 + p0 * sx1)), rho);
  t.m1x = expectation(Operator4(0.5 * (sx1 * p1 + p1 * sx1)), rho);
  t.m0y = expectation(Operator4(0.5 * (sy1 * p0 + p0 * sy1)), rho);
  t.m1y = expectation(Operator4(0.5 * (sy1 * p1 + p1 * sy1)), rho);

  // gamma3 readout: rotate qubit 1 by pi/2 about y, then the antiphase peak
  // difference m0x - m1x equals <sz1 sz2> of the input state.
  const Operator4 map = rotation_unitary(Rotation{1, M_PI / 2.0, M_PI / 2.0});
  const DensityMatrix4 rot = map * rho * map.adjoint();
  const Operator4 sx_proj_diff = pauli_tensor(Pauli::X, Pauli::Z);  // M0x - M1x
  t.gamma3 = expectation(sx_proj_diff, rot);
  return t;
}

std::string to_text(const PulseSequence& seq) {
  const double deg = 180.0 / M_PI;
  std::ostringstream out;
  char buf[160];
  for (const auto& op : seq.ops) {
    if (const auto* r = std::get_if<Rotation>(&op)) {
      std::snprintf(buf, sizeof buf, "ROT %d %.12g %.12g\n", r->qubit,
                    r->axis_phi * deg, r->theta * deg);
    } else if (const auto* d = std::get_if<JDelay>(&op)) {
      std::snprintf(buf, sizeof buf, "JDELAY %.12g\n", d->duration);
    } else if (const auto* h = std::get_if<HardPulse>(&op)) {
      std::snprintf(buf, sizeof buf, "HARD %d %.12g %.12g %.12g\n", h->qubit,
                    h->b1_hz, h->phi * deg, h->length);
    } else {
      std::snprintf(buf, sizeof buf, "CRUSH\n");
    }
    out << buf;
  }
  return out.str();
}

PulseSequence from_text(const std::string& text) {
  const double rad = M_PI / 180.0;
  PulseSequence seq;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "ROT") {
      Rotation r;
      double axis_deg, flip_deg;
      if (!(ls >> r.qubit >> axis_deg >> flip_deg))
        throw std::invalid_argument("from_text: bad ROT line: " + line);
      r.axis_phi = axis_deg * rad;
      r.theta = flip_deg * rad;
      seq.ops.push_back(r);
    } else if (tag == "JDELAY") {
      JDelay d;
      if (!(ls >> d.duration))
        throw std::invalid_argument("from_text: bad JDELAY line: " + line);
      seq.ops.push_back(d);
    } else if (tag == "HARD") {
      HardPulse h;
      double phase_deg;
      if (!(ls >> h.qubit >> h.b1_hz >> phase_deg >> h.length))
        throw std::invalid_argument("from_text: bad HARD line: " + line);
      h.phi = phase_deg * rad;
      seq.ops.push_back(h);
    } else if (tag == "CRUSH") {
      seq.ops.push_back(GradientCrush{});
    } else {
      throw std::invalid_argument("from_text: unknown primitive: " + tag);
    }
  }
  return seq;
}

}  // namespace quench::nmr
