#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>
#include <vector>

#include "quench/dynamics.hpp"
#include "quench/model.hpp"
#include "quench/types.hpp"

// Band-inversion-surface location, offset-surface sampling, dynamical
// spin-texture field, and winding-number integration.

namespace quench::topo {

struct EmptyBis : std::runtime_error {
  EmptyBis() : std::runtime_error("h0 has constant sign: no band-inversion surface") {}
};
struct DegenerateGradient : std::runtime_error {
  DegenerateGradient() : std::runtime_error("vanishing grad h0 at a surface vertex") {}
};
struct NoConvergence : std::runtime_error {
  NoConvergence() : std::runtime_error("offset-shell root not bracketed within pi/2") {}
};
struct OpenMesh : std::runtime_error {
  OpenMesh() : std::runtime_error("surface mesh is not closed") {}
};
struct FieldGap : std::runtime_error {
  FieldGap() : std::runtime_error("flagged-vertex fraction exceeds 1%") {}
};

// Triangulated h0 = 0 isosurface over the periodic Brillouin zone. Triangle
// orientation follows +grad h0 ("inside out").
struct BisMesh {
  std::vector<Eigen::Vector3d> vertices;            // canonical, in [-pi, pi)
  std::vector<std::array<int, 3>> triangles;

  bool closed() const;  // every edge shared by exactly two triangles
};

// Unwrap b to the periodic image nearest a (componentwise).
Eigen::Vector3d unwrap_near(const Eigen::Vector3d& a, const Eigen::Vector3d& b);

Eigen::Vector3d grad_h0(const ModelParams& p, const Eigen::Vector3d& k);

// Marching-squares contours of h0 = 0 on the periodic (kx, ky) torus at fixed
// kz; closed polylines of (kx, ky) points. Empty when h0 has constant sign.
std::vector<std::vector<Eigen::Vector2d>> find_bis_slice(const ModelParams& p,
                                                         double kz, int n);

// Marching-tetrahedra triangulation over the periodic n^3 grid, vertices
// Newton-refined to |h0| <= 1e-6 xi0. Throws EmptyBis / DegenerateGradient.
BisMesh extract_bis_mesh(const ModelParams& p, int n);

struct ShellPair {
  Eigen::Vector3d point_minus, point_plus;  // h0 = -delta / +delta
  double delta_k = 0.0;                     // separation along the normal path
  int base_vertex = -1;
};

// One pair per mesh vertex, found by 1D root-finding along +-grad h0.
std::vector<ShellPair> offset_shells(const BisMesh& mesh, const ModelParams& p,
                                     double delta);

struct DynamicalField {
  std::vector<Eigen::Vector3d> g;     // raw slope field, one per base vertex
  std::vector<Eigen::Vector3d> ghat;  // normalized; undefined where flagged
  std::vector<char> flagged;          // |g| below the magnitude floor

  int flagged_count() const;
};

enum class AverageKind { TimeGrid, Dense };

// g = -(texture(point_plus) - texture(point_minus)) / delta_k per base vertex.
// TimeGrid averages over spec.times (Monte-Carlo in NoisyExact mode); Dense
// uses the long-horizon oracle average with exact evolution.
DynamicalField dynamical_field(const QuenchSpec& spec,
                               const std::vector<ShellPair>& pairs,
                               AverageKind kind, unsigned workers = 0);

// Degree of the vertex field as a map to S^2: signed solid-angle sum over
// triangles / 4 pi, times the frozen orientation sign. Triangles touching a
// flagged vertex are skipped. Throws OpenMesh / FieldGap.
double winding_number(const BisMesh& mesh, const DynamicalField& field);

// Same integrator with the normalized SO field (h1, h2, h3)/|.| taken
// directly on the surface: the equilibrium invariant the dynamical field
// reconstructs.
double winding_number_analytic_oracle(const ModelParams& p, int n);

}  // namespace quench::topo
