#include "quench/topology.hpp"

#include <map>
#include <unordered_map>

#include "quench/constants.hpp"
#include "quench/parallel.hpp"

namespace quench::topo {

namespace {

double h0_at(const ModelParams& p, const Eigen::Vector3d& k) {
  return p.mz - p.xi0 * (std::cos(k.x()) + std::cos(k.y()) + std::cos(k.z()));
}

// Exact grid zeros would make marching cases degenerate; nudge them onto the
// positive side.
double nudged(double f, double xi0) {
  return (f == 0.0) ? 1e-12 * xi0 : f;
}

double wrap_pi(double x) { return Momentum::wrap(x); }

Eigen::Vector3d wrap_vec(const Eigen::Vector3d& v) {
  return {wrap_pi(v.x()), wrap_pi(v.y()), wrap_pi(v.z())};
}

}  // namespace

Eigen::Vector3d unwrap_near(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double two_pi = 2.0 * M_PI;
  Eigen::Vector3d out = b;
  for (int c = 0; c < 3; ++c) {
    out(c) -= two_pi * std::round((b(c) - a(c)) / two_pi);
  }
  return out;
}

Eigen::Vector3d grad_h0(const ModelParams& p, const Eigen::Vector3d& k) {
  return p.xi0 * Eigen::Vector3d(std::sin(k.x()), std::sin(k.y()), std::sin(k.z()));
}

bool BisMesh::closed() const {
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : triangles) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      if (a > b) std::swap(a, b);
      ++edge_count[{a, b}];
    }
  }
  for (const auto& [edge, count] : edge_count) {
    if (count != 2) return false;
  }
  return !triangles.empty();
}

// ---------------------------------------------------------------------------
// 2D slice contours (marching squares on the torus)

std::vector<std::vector<Eigen::Vector2d>> find_bis_slice(const ModelParams& p,
                                                         double kz, int n) {
  if (n < 8) throw std::invalid_argument("find_bis_slice: grid size must be >= 8");
  if (!p.valid()) throw std::invalid_argument("find_bis_slice: invalid params");

  const double step = 2.0 * M_PI / n;
  auto node_pos = [&](int i) { return -M_PI + step * i; };

  std::vector<double> f(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f[i * n + j] = nudged(
          h0_at(p, {node_pos(i), node_pos(j), kz}), p.xi0);

  // edge key: horizontal (along kx) or vertical (along ky) edge at node (i,j)
  auto hkey = [&](int i, int j) { return ((i % n) * n + (j % n)) * 2 + 0; };
  auto vkey = [&](int i, int j) { return ((i % n) * n + (j % n)) * 2 + 1; };

  std::unordered_map<int, Eigen::Vector2d> points;
  std::unordered_map<int, std::vector<int>> adj;
  auto add_segment = [&](int ka, const Eigen::Vector2d& pa, int kb,
                         const Eigen::Vector2d& pb) {
    points.try_emplace(ka, wrap_pi(pa.x()), wrap_pi(pa.y()));
    points.try_emplace(kb, wrap_pi(pb.x()), wrap_pi(pb.y()));
    adj[ka].push_back(kb);
    adj[kb].push_back(ka);
  };

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double f00 = f[i * n + j];
      const double f10 = f[((i + 1) % n) * n + j];
      const double f01 = f[i * n + (j + 1) % n];
      const double f11 = f[((i + 1) % n) * n + (j + 1) % n];
      const bool b00 = f00 < 0, b10 = f10 < 0, b01 = f01 < 0, b11 = f11 < 0;
      const int idx = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
      if (idx == 0 || idx == 15) continue;

      const double x0 = node_pos(i), y0 = node_pos(j);
      auto cross = [&](double fa, double fb) { return fa / (fa - fb); };
      // crossing points on the four cell edges, cell frame
      const Eigen::Vector2d ps(x0 + cross(f00, f10) * step, y0);          // bottom
      const Eigen::Vector2d pn(x0 + cross(f01, f11) * step, y0 + step);   // top
      const Eigen::Vector2d pw(x0, y0 + cross(f00, f01) * step);          // left
      const Eigen::Vector2d pe(x0 + step, y0 + cross(f10, f11) * step);   // right
      const int ks = hkey(i, j), kn = hkey(i, j + 1);
      const int kw = vkey(i, j), ke = vkey(i + 1, j);

      switch (idx) {
        case 1: case 14: add_segment(kw, pw, ks, ps); break;
        case 2: case 13: add_segment(ks, ps, ke, pe); break;
        case 3: case 12: add_segment(kw, pw, ke, pe); break;
        case 4: case 11: add_segment(ke, pe, kn, pn); break;
        case 6: case 9:  add_segment(ks, ps, kn, pn); break;
        case 7: case 8:  add_segment(kw, pw, kn, pn); break;
        case 5: case 10: {
          const double center = 0.25 * (f00 + f10 + f01 + f11);
          const bool diag_inside = (idx == 5) == (center < 0);
          if (diag_inside) {
            add_segment(ks, ps, ke, pe);
            add_segment(kn, pn, kw, pw);
          } else {
            add_segment(kw, pw, ks, ps);
            add_segment(ke, pe, kn, pn);
          }
          break;
        }
        default: break;
      }
    }
  }

  // stitch segments into closed loops; iterate keys in sorted order so the
  // output is deterministic
  std::vector<std::vector<Eigen::Vector2d>> loops;
  std::map<int, std::vector<int>> sorted_adj(adj.begin(), adj.end());
  std::unordered_map<int, bool> used;
  for (const auto& [start, neigh] : sorted_adj) {
    if (used[start] || neigh.size() != 2) continue;
    std::vector<Eigen::Vector2d> loop;
    int prev = -1, cur = start;
    while (true) {
      used[cur] = true;
      loop.push_back(points.at(cur));
      const auto& nb = sorted_adj.at(cur);
      int next = (nb[0] == prev) ? nb[1] : nb[0];
      prev = cur;
      cur = next;
      if (cur == start) break;
      if (used[cur]) break;  // defends against malformed adjacency
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

// ---------------------------------------------------------------------------
// 3D isosurface (marching tetrahedra, Kuhn decomposition, periodic grid)

namespace {

struct MeshBuilder {
  const ModelParams& p;
  int n;
  double step;
  std::vector<double> f;  // node values, nudged
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::unordered_map<std::uint64_t, int> edge_vertex;

  explicit MeshBuilder(const ModelParams& params, int grid)
      : p(params), n(grid), step(2.0 * M_PI / grid) {
    f.resize(static_cast<size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          f[flat(i, j, k)] = nudged(h0_at(p, node_pos({i, j, k})), p.xi0);
  }

  std::size_t flat(int i, int j, int k) const {
    return (static_cast<size_t>(i) * n + j) * n + k;
  }
  Eigen::Vector3d node_pos(const Eigen::Vector3i& idx) const {
    return {-M_PI + step * idx.x(), -M_PI + step * idx.y(), -M_PI + step * idx.z()};
  }
  double node_f(const Eigen::Vector3i& idx) const {
    return f[flat(((idx.x() % n) + n) % n, ((idx.y() % n) + n) % n,
               ((idx.z() % n) + n) % n)];
  }

  // Edge between componentwise-comparable corners: canonical base is the
  // smaller corner; the key is shared across every cell touching the edge.
  int edge_point(const Eigen::Vector3i& cell, const Eigen::Vector3i& ca,
                 const Eigen::Vector3i& cb) {
    Eigen::Vector3i lo = ca.cwiseMin(cb), hi = ca.cwiseMax(cb);
    const Eigen::Vector3i base = cell + lo;
    const Eigen::Vector3i off = hi - lo;
    const std::uint64_t code = off.x() + 2 * off.y() + 4 * off.z();
    const std::uint64_t key =
        (flat(((base.x() % n) + n) % n, ((base.y() % n) + n) % n,
              ((base.z() % n) + n) % n)) * 8 + code;
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;

    const double fa = node_f(base), fb = node_f(base + off);
    const double t = fa / (fa - fb);
    const Eigen::Vector3d pos =
        node_pos(base) + t * step * off.cast<double>();
    const int id = static_cast<int>(vertices.size());
    vertices.push_back(wrap_vec(pos));
    edge_vertex.emplace(key, id);
    return id;
  }

  void emit_tet(const Eigen::Vector3i& cell, const std::array<Eigen::Vector3i, 4>& c) {
    std::array<double, 4> fv;
    for (int i = 0; i < 4; ++i) fv[i] = node_f(cell + c[i]);
    std::vector<int> in, out;
    for (int i = 0; i < 4; ++i) (fv[i] < 0 ? in : out).push_back(i);
    if (in.empty() || out.empty()) return;

    auto ep = [&](int a, int b) { return edge_point(cell, c[a], c[b]); };
    if (in.size() == 1) {
      const int v = in[0];
      triangles.push_back({ep(v, out[0]), ep(v, out[1]), ep(v, out[2])});
    } else if (in.size() == 3) {
      const int v = out[0];
      triangles.push_back({ep(v, in[0]), ep(v, in[1]), ep(v, in[2])});
    } else {
      const int e00 = ep(in[0], out[0]), e01 = ep(in[0], out[1]);
      const int e10 = ep(in[1], out[0]), e11 = ep(in[1], out[1]);
      triangles.push_back({e00, e01, e11});
      triangles.push_back({e00, e11, e10});
    }
  }

  void run() {
    // Kuhn 6-tet split of each cube: one tet per axis permutation, all
    // sharing the main diagonal; face diagonals match between neighbors.
    static const std::array<std::array<int, 3>, 6> perms = {
        {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          const Eigen::Vector3i cell(i, j, k);
          bool any_neg = false, any_pos = false;
          for (int d = 0; d < 8; ++d) {
            const double v = node_f(cell + Eigen::Vector3i(d & 1, (d >> 1) & 1,
                                                          (d >> 2) & 1));
            (v < 0 ? any_neg : any_pos) = true;
          }
          if (!any_neg || !any_pos) continue;
          for (const auto& perm : perms) {
            std::array<Eigen::Vector3i, 4> corners;
            corners[0] = Eigen::Vector3i::Zero();
            Eigen::Vector3i acc = Eigen::Vector3i::Zero();
            for (int step_i = 0; step_i < 3; ++step_i) {
              acc(perm[step_i]) = 1;
              corners[step_i + 1] = acc;
            }
            emit_tet(cell, corners);
          }
        }
      }
    }
  }
};

}  // namespace

BisMesh extract_bis_mesh(const ModelParams& p, int n) {
  if (n < 16) throw std::invalid_argument("extract_bis_mesh: grid size must be >= 16");
  if (phase_oracle(p).boundary)
    throw std::invalid_argument("extract_bis_mesh: m_z on a phase boundary");

  MeshBuilder builder(p, n);
  builder.run();
  if (builder.triangles.empty()) throw EmptyBis();

  BisMesh mesh;
  mesh.vertices = std::move(builder.vertices);
  mesh.triangles = std::move(builder.triangles);

  // Newton refinement along grad h0 down to |h0| <= 1e-6 xi0
  const double target = tol::bis_residual_rel * p.xi0;
  const double grad_floor = tol::grad_floor_rel * p.xi0;
  for (auto& v : mesh.vertices) {
    for (int iter = 0; iter < 50; ++iter) {
      const double r = h0_at(p, v);
      if (std::abs(r) <= target) break;
      const Eigen::Vector3d g = grad_h0(p, v);
      const double g2 = g.squaredNorm();
      if (g2 < grad_floor * grad_floor) throw DegenerateGradient();
      v -= (r / g2) * g;
    }
    v = wrap_vec(v);
  }

  // orient every triangle along +grad h0
  for (auto& t : mesh.triangles) {
    const Eigen::Vector3d a = mesh.vertices[t[0]];
    const Eigen::Vector3d b = unwrap_near(a, mesh.vertices[t[1]]);
    const Eigen::Vector3d c = unwrap_near(a, mesh.vertices[t[2]]);
    const Eigen::Vector3d centroid = (a + b + c) / 3.0;
    const Eigen::Vector3d normal = (b - a).cross(c - a);
    if (normal.dot(grad_h0(p, centroid)) < 0.0) std::swap(t[1], t[2]);
  }
  return mesh;
}

// ---------------------------------------------------------------------------
// Offset shells and the dynamical field

namespace {

// root of h0(v + s d) = target for s in (0, pi/2]
double walk_to_level(const ModelParams& p, const Eigen::Vector3d& v,
                     const Eigen::Vector3d& d, double target) {
  auto residual = [&](double s) { return h0_at(p, v + s * d) - target; };
  const double r0 = residual(0.0);
  double hi = std::abs(target - h0_at(p, v)) / std::max(grad_h0(p, v).norm(), 1e-30);
  hi = std::max(hi, 1e-6);
  while (residual(hi) * r0 > 0.0) {
    hi *= 1.5;
    if (hi > M_PI / 2.0) throw NoConvergence();
  }
  double lo = 0.0;
  const double tol_h = 0.1 * tol::bis_residual_rel * p.xi0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) <= tol_h) return mid;
    if (r * r0 > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<ShellPair> offset_shells(const BisMesh& mesh, const ModelParams& p,
                                     double delta) {
  if (!(delta > 0.0) || delta >= 0.5 * p.xi0)
    throw std::invalid_argument("offset_shells: delta must be in (0, 0.5 xi0)");
  std::vector<ShellPair> pairs(mesh.vertices.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Eigen::Vector3d& v = mesh.vertices[i];
    const Eigen::Vector3d g = grad_h0(p, v);
    if (g.norm() < tol::grad_floor_rel * p.xi0) throw DegenerateGradient();
    const Eigen::Vector3d d = g.normalized();
    const double s_plus = walk_to_level(p, v, d, delta);
    const double s_minus = walk_to_level(p, v, -d, -delta);
    ShellPair pair;
    pair.base_vertex = static_cast<int>(i);
    pair.point_plus = v + s_plus * d;
    pair.point_minus = v - s_minus * d;
    pair.delta_k = s_plus + s_minus;
    pairs[i] = pair;
  }
  return pairs;
}

int DynamicalField::flagged_count() const {
  int c = 0;
  for (char fl : flagged) c += (fl != 0);
  return c;
}

DynamicalField dynamical_field(const QuenchSpec& spec,
                               const std::vector<ShellPair>& pairs,
                               AverageKind kind, unsigned workers) {
  DynamicalField field;
  field.g.resize(pairs.size());
  field.ghat.resize(pairs.size());
  field.flagged.assign(pairs.size(), 0);

  auto texture_at = [&](const Eigen::Vector3d& pt) -> Eigen::Vector3d {
    const Momentum k{pt.x(), pt.y(), pt.z()};
    const SpinTexture s = (kind == AverageKind::Dense)
                              ? dense_averaged_texture(spec.params, k)
                              : time_averaged_texture(spec, k);
    return {s.g1, s.g2, s.g3};
  };

  parallel_for(
      pairs.size(),
      [&](std::size_t i) {
        const ShellPair& pair = pairs[i];
        const Eigen::Vector3d g =
            -(texture_at(pair.point_plus) - texture_at(pair.point_minus)) /
            pair.delta_k;
        field.g[i] = g;
        const double norm = g.norm();
        if (norm < tol::g_floor) {
          field.flagged[i] = 1;
          field.ghat[i].setZero();
        } else {
          field.ghat[i] = g / norm;
        }
      },
      workers);
  return field;
}

// ---------------------------------------------------------------------------
// Degree integration

double winding_number(const BisMesh& mesh, const DynamicalField& field) {
  if (field.ghat.size() != mesh.vertices.size())
    throw std::invalid_argument("winding_number: field/mesh size mismatch");
  if (!mesh.closed()) throw OpenMesh();
  const double flagged_fraction =
      static_cast<double>(field.flagged_count()) /
      static_cast<double>(mesh.vertices.size());
  if (flagged_fraction >= tol::flagged_fraction_max) throw FieldGap();

  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    if (field.flagged[t[0]] || field.flagged[t[1]] || field.flagged[t[2]]) continue;
    const Eigen::Vector3d& a = field.ghat[t[0]];
    const Eigen::Vector3d& b = field.ghat[t[1]];
    const Eigen::Vector3d& c = field.ghat[t[2]];
    // signed solid angle of the spherical triangle (a, b, c)
    const double num = a.dot(b.cross(c));
    const double den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    total += 2.0 * std::atan2(num, den);
  }
  return tol::degree_sign * total / (4.0 * M_PI);
}

double winding_number_analytic_oracle(const ModelParams& p, int n) {
  const BisMesh mesh = extract_bis_mesh(p, n);
  DynamicalField field;
  field.g.resize(mesh.vertices.size());
  field.ghat.resize(mesh.vertices.size());
  field.flagged.assign(mesh.vertices.size(), 0);
  for (size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Momentum k{mesh.vertices[i].x(), mesh.vertices[i].y(),
                     mesh.vertices[i].z()};
    const HVector h = h_field(p, k);
    Eigen::Vector3d so(h.h1, h.h2, h.h3);
    const double norm = so.norm();
    field.g[i] = so;
    if (norm < tol::g_floor * p.xi_so) {
      field.flagged[i] = 1;
      field.ghat[i].setZero();
    } else {
      field.ghat[i] = so / norm;
    }
  }
  return winding_number(mesh, field);
}

}  // namespace quench::topo
