// cli_runner.hpp — batch driver: config-driven runs, the verification
// suites, and the file-to-file commands behind the cmflow executable.
//
// Exit codes: 0 on success (a steady stop counts as success), 1 for
// configuration or input problems, 2 when the integration or an optimizer
// fails.
//
// Run config JSON, unknown keys rejected:
// {
//   "alpha": 1 or 4,
//   "n_samples": even, >= 8,
//   "t_end": >= 0,
//   "cadence": > 0,
//   "cfl": optional, in (0, 1],
//   "max_dt": optional, > 0,
//   "projections": optional, {"length": bool, "orthogonality": bool},
//   "seed": required exactly when the initial data is randomized,
//   "output_dir": path,
//   "initial": exactly one of
//     {"preset": {"name": ..., per-preset parameters}}
//     {"fourier_u": {"a": [a0, a1, ...], "b": [b1, ...]}}   coefficients of u
//     {"fourier_w": {"a": ..., "b": ...}}                   coefficients of u^-3
//     {"polygon": "vertices.csv"}                           alpha = 1 only
// }
//
// A run writes trajectory.csv, snapshot_NNNN.json (plus curve_NNNN.csv for
// alpha = 1) and summary.json into output_dir, which is locked against
// concurrent runs for its duration. The environment variable
// CMFLOW_OUTPUT_ROOT, when set, re-roots all outputs: run directories are
// joined under it and the derived outputs of the file commands land inside
// it instead of next to their input.

#pragma once

#include <cstdint>
#include <string>

namespace cmflow {

int cmd_run(const std::string& config_path);
int cmd_verify(const std::string& suite, std::uint64_t seed);
int cmd_normalize(const std::string& metric_path);
int cmd_reconstruct(const std::string& metric_path);
int cmd_ingest(const std::string& polygon_path, int resample);
int cmd_inequality(const std::string& which, const std::string& field_path);

// Argument parsing and dispatch for main().
int run_cli(int argc, char** argv);

}  // namespace cmflow
