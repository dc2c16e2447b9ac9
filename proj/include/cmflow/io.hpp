// io.hpp — the file formats the tools speak
//
// CSV floating-point cells carry 17 significant digits so a read-back
// reproduces the double exactly; JSON numbers use shortest round-trip form.
// Diagnostics that do not apply to a flow family (the area column for
// alpha = 4, the Kazdan-Warner residual for alpha = 1) appear as empty CSV
// cells. Readers throw std::runtime_error naming the file and the offense.

#pragma once

#include <array>
#include <filesystem>
#include <vector>

#include "cmflow/affine_bridge.hpp"
#include "cmflow/circle_field.hpp"
#include "cmflow/conformal_metric.hpp"
#include "cmflow/diagnostics.hpp"
#include "cmflow/flow_engine.hpp"

namespace cmflow {

// Rows `theta,value` over the uniform grid.
void write_field_csv(const std::filesystem::path& path, const CircleField& f);

// { "n": ..., "samples": [...] }
void write_field_json(const std::filesystem::path& path, const CircleField& f);
CircleField read_field_json(const std::filesystem::path& path);

// { "alpha": ..., "n": ..., "u": [...] }
void write_metric_json(const std::filesystem::path& path,
                       const ConformalMetric& m);
ConformalMetric read_metric_json(const std::filesystem::path& path);

// Header `t,Rbar,L,F2,F4,umin,umax,area,kw_residual,harnack,a1,b1,a2,b2,a3,b3`,
// one row per recorded time.
void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectoryRecord& record);

// Header `theta,x,y,h,k`: embedded point, support value, and affine
// curvature at every grid angle.
void write_curve_csv(const std::filesystem::path& path,
                     const ConformalMetric& m, const CurveEmbedding& emb);

// Vertex rows `x,y`, closed implicitly. A leading non-numeric line is a
// header; the columns named x and y are used then, so exported curve CSVs
// ingest directly.
std::vector<std::array<double, 2>> read_polygon_csv(
    const std::filesystem::path& path);

// { "value": ..., "bound": ..., "deficit": ... }
void write_inequality_json(const std::filesystem::path& path,
                           const InequalityReport& report);

// { "rate": ..., "window": [t0, t1], "r2": ... }
void write_decay_json(const std::filesystem::path& path, const DecayFit& fit);

}  // namespace cmflow
