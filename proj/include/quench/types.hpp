#pragma once

#include <cmath>

namespace quench {

// Bloch-Hamiltonian parameters. All coefficients are angular frequencies
// (rad/s); times are seconds throughout.
struct ModelParams {
  double mz = 0.0;
  double xi0 = 1600.0;
  double xi_so = 400.0;

  bool valid() const { return xi0 > 0.0 && xi_so > 0.0 && std::isfinite(mz); }
};

// Dimensionless wavenumber on the 3-torus, each component in [-pi, pi).
struct Momentum {
  double kx = 0.0, ky = 0.0, kz = 0.0;

  static double wrap(double k) {
    const double two_pi = 2.0 * M_PI;
    double w = std::fmod(k + M_PI, two_pi);
    if (w < 0.0) w += two_pi;
    return w - M_PI;
  }
  Momentum canonical() const { return {wrap(kx), wrap(ky), wrap(kz)}; }
};

// The four Bloch coefficients at one momentum point plus the gap energy.
struct HVector {
  double h0 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0;

  double gap() const { return std::sqrt(h0 * h0 + h1 * h1 + h2 * h2 + h3 * h3); }
};

struct SpinTexture {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;

  double norm() const { return std::sqrt(g1 * g1 + g2 * g2 + g3 * g3); }
};

}  // namespace quench
