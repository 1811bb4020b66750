#include "quench/driver.hpp"

#include <fstream>

#include "quench/constants.hpp"
#include "quench/nmr.hpp"
#include "quench/parallel.hpp"
#include "quench/topology.hpp"

namespace quench::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path.string());
  return out;
}

topo::AverageKind average_kind(const RunConfig& c) {
  return (c.average == "dense") ? topo::AverageKind::Dense
                                : topo::AverageKind::TimeGrid;
}

std::string csv_row(std::initializer_list<double> values) {
  std::string row;
  for (double v : values) {
    if (!row.empty()) row.push_back(',');
    row += fmt_g12(v);
  }
  row.push_back('\n');
  return row;
}

struct WindingResult {
  double nu3_raw = 0.0;
  int nu3_rounded = 0;
  double analytic = 0.0;
  bool empty_bis = false;
  std::size_t n_vertices = 0, n_triangles = 0;
  int flagged = 0;
  topo::BisMesh mesh;
  topo::DynamicalField field;
};

WindingResult run_winding(const RunConfig& c) {
  WindingResult r;
  const ModelParams p = c.model();
  try {
    r.mesh = topo::extract_bis_mesh(p, c.mesh_n);
  } catch (const topo::EmptyBis&) {
    r.empty_bis = true;
    return r;
  }
  r.n_vertices = r.mesh.vertices.size();
  r.n_triangles = r.mesh.triangles.size();
  const auto pairs = topo::offset_shells(r.mesh, p, c.delta_over_xi0 * p.xi0);
  r.field = topo::dynamical_field(c.quench_spec(), pairs, average_kind(c), c.workers);
  r.flagged = r.field.flagged_count();
  r.nu3_raw = topo::winding_number(r.mesh, r.field);
  r.nu3_rounded = static_cast<int>(std::lround(r.nu3_raw));
  r.analytic = topo::winding_number_analytic_oracle(p, c.mesh_n);
  return r;
}

}  // namespace

fs::path output_path(const RunConfig& c, const std::string& name) {
  return fs::path(c.out_dir) / name;
}

void cmd_textures(const RunConfig& c) {
  c.validate();
  const QuenchSpec spec = c.quench_spec();
  const int n = c.slice_n;
  const double step = 2.0 * M_PI / n;

  std::vector<SpinTexture> rows(static_cast<size_t>(n) * n);
  parallel_for(
      rows.size(),
      [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / n;
        const int j = static_cast<int>(idx) % n;
        const Momentum k{-M_PI + step * i, -M_PI + step * j, c.kz};
        rows[idx] = (c.average == "dense")
                        ? dense_averaged_texture(spec.params, k)
                        : time_averaged_texture(spec, k);
      },
      c.workers);

  auto out = open_output(output_path(c, "textures.csv"));
  out << metadata_header(c) << "kx,ky,kz,g1bar,g2bar,g3bar\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const SpinTexture& s = rows[static_cast<size_t>(i) * n + j];
      out << csv_row({-M_PI + step * i, -M_PI + step * j, c.kz, s.g1, s.g2, s.g3});
    }
  }
}

void cmd_bis(const RunConfig& c) {
  c.validate();
  const ModelParams p = c.model();

  const auto loops = topo::find_bis_slice(p, c.kz, c.slice_n);
  auto slice_out = open_output(output_path(c, "bis_slice.csv"));
  slice_out << metadata_header(c) << "loop,kx,ky,kz\n";
  for (size_t l = 0; l < loops.size(); ++l) {
    for (const auto& pt : loops[l]) {
      slice_out << fmt_g12(static_cast<double>(l)) << ','
                << fmt_g12(pt.x()) << ',' << fmt_g12(pt.y()) << ','
                << fmt_g12(c.kz) << '\n';
    }
  }

  auto off = open_output(output_path(c, "bis_mesh.off"));
  off << "OFF\n" << metadata_header(c);
  try {
    const topo::BisMesh mesh = topo::extract_bis_mesh(p, c.mesh_n);
    off << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
    for (const auto& v : mesh.vertices)
      off << fmt_g12(v.x()) << ' ' << fmt_g12(v.y()) << ' ' << fmt_g12(v.z()) << '\n';
    for (const auto& t : mesh.triangles)
      off << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  } catch (const topo::EmptyBis&) {
    off << "0 0 0\n# empty: h0 has constant sign\n";
  }
}

void cmd_winding(const RunConfig& c) {
  c.validate();
  if (phase_oracle(c.model()).boundary)
    throw std::invalid_argument("winding: m_z lies on a phase boundary");
  const WindingResult r = run_winding(c);

  nlohmann::json report;
  report["nu3_raw"] = r.nu3_raw;
  report["nu3_rounded"] = r.nu3_rounded;
  report["analytic_oracle"] = r.empty_bis ? 0.0 : r.analytic;
  report["empty_bis"] = r.empty_bis;
  report["mesh_stats"] = {{"vertices", r.n_vertices},
                          {"triangles", r.n_triangles},
                          {"shell_pairs", r.n_vertices}};
  report["flagged_vertices"] = r.flagged;
  report["config"] = c.to_json();

  auto jout = open_output(output_path(c, "winding.json"));
  jout << metadata_header(c) << report.dump(2) << '\n';

  auto fout = open_output(output_path(c, "field.csv"));
  fout << metadata_header(c) << "kx,ky,kz,g1,g2,g3\n";
  for (size_t i = 0; i < r.mesh.vertices.size(); ++i) {
    const auto& v = r.mesh.vertices[i];
    const auto& g = r.field.g[i];
    fout << csv_row({v.x(), v.y(), v.z(), g.x(), g.y(), g.z()});
  }
}

void cmd_noise(const RunConfig& c) {
  c.validate();
  const ModelParams p = c.model();
  std::vector<double> levels = c.noise_levels_over_xi_so;
  if (levels.empty()) levels = {0.0, 0.1, 0.25, 0.5};

  const topo::BisMesh mesh = topo::extract_bis_mesh(p, c.mesh_n);
  const auto pairs = topo::offset_shells(mesh, p, c.delta_over_xi0 * p.xi0);

  auto out = open_output(output_path(c, "noise.csv"));
  out << metadata_header(c) << "A_over_xi_so,nu3,mean_abs_texture,samples\n";

  for (double a : levels) {
    QuenchSpec spec = c.quench_spec();
    spec.noise_level = a * c.xi_so;
    spec.mode = (a > 0.0) ? EvolutionMode::NoisyExact : EvolutionMode::Exact;

    // textures on both shells: reused for the field and the decay statistic
    std::vector<Eigen::Vector3d> tex_plus(pairs.size()), tex_minus(pairs.size());
    parallel_for(
        pairs.size(),
        [&](std::size_t i) {
          auto tex = [&](const Eigen::Vector3d& pt) -> Eigen::Vector3d {
            const Momentum k{pt.x(), pt.y(), pt.z()};
            const SpinTexture s = time_averaged_texture(spec, k);
            return {s.g1, s.g2, s.g3};
          };
          tex_plus[i] = tex(pairs[i].point_plus);
          tex_minus[i] = tex(pairs[i].point_minus);
        },
        c.workers);

    topo::DynamicalField field;
    field.g.resize(pairs.size());
    field.ghat.resize(pairs.size());
    field.flagged.assign(pairs.size(), 0);
    double mean_abs = 0.0;
    for (size_t i = 0; i < pairs.size(); ++i) {
      mean_abs += 0.5 * (tex_plus[i].norm() + tex_minus[i].norm());
      const Eigen::Vector3d g = -(tex_plus[i] - tex_minus[i]) / pairs[i].delta_k;
      field.g[i] = g;
      if (g.norm() < tol::g_floor) {
        field.flagged[i] = 1;
        field.ghat[i].setZero();
      } else {
        field.ghat[i] = g.normalized();
      }
    }
    mean_abs /= static_cast<double>(pairs.size());
    const double nu3 = topo::winding_number(mesh, field);
    out << csv_row({a, nu3, mean_abs, static_cast<double>(spec.noise_samples)});
  }
}

void cmd_pulse(const RunConfig& c) {
  c.validate();
  if (c.pulse_h.size() != 4)
    throw std::invalid_argument("pulse: pulse_h must hold exactly [h0, h1, h2, h3]");
  const HVector h{c.pulse_h[0], c.pulse_h[1], c.pulse_h[2], c.pulse_h[3]};
  nmr::NmrParams np{c.nmr_j_hz, c.nmr_tau_hard};

  const nmr::PulseSequence seq = nmr::compile_slice(h, c.tau, np);
  auto txt = open_output(output_path(c, "sequence.txt"));
  txt << metadata_header(c) << nmr::to_text(seq);

  const Operator4 exact_slice =
      evolve_closed_form({h.h0, 0, 0, 0}, c.tau) *
      evolve_closed_form({0, 0, 0, h.h3}, c.tau) *
      evolve_closed_form({0, h.h1, h.h2, 0}, c.tau);
  nlohmann::json report;
  report["ideal_fidelity"] = fidelity_unitary(
      nmr::simulate_sequence(seq, np, nmr::PulseModel::Ideal), exact_slice);
  report["finite_pulse_fidelity"] = fidelity_unitary(
      nmr::simulate_sequence(seq, np, nmr::PulseModel::FinitePulse), exact_slice);
  report["total_duration"] = seq.duration();
  report["primitives"] = seq.ops.size();
  report["config"] = c.to_json();

  auto jout = open_output(output_path(c, "pulse.json"));
  jout << metadata_header(c) << report.dump(2) << '\n';
}

}  // namespace quench::cli
