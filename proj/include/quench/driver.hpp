#pragma once

#include <filesystem>

#include "quench/run_config.hpp"

// Experiment driver: momentum-grid sweeps, parallel execution, CSV/JSON
// emission. All outputs are deterministic for a fixed config and seed,
// independent of the worker count.

namespace quench::cli {

// textures.csv: time-averaged spin texture over the slice_n x slice_n lattice
// at fixed kz, row-major in (kx, ky).
void cmd_textures(const RunConfig& c);

// bis_slice.csv (contour polylines at kz) and bis_mesh.off.
void cmd_bis(const RunConfig& c);

// winding.json report plus field.csv per-vertex dynamical field.
void cmd_winding(const RunConfig& c);

// noise.csv: one row per noise level A with the recomputed winding number and
// the mean shell-texture magnitude.
void cmd_noise(const RunConfig& c);

// sequence.txt (compiled pulse sequence) and pulse.json fidelity report.
void cmd_pulse(const RunConfig& c);

std::filesystem::path output_path(const RunConfig& c, const std::string& name);

}  // namespace quench::cli
