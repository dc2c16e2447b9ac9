// cli_runner.cpp — config parsing, command dispatch, and file emission.
//
// Error mapping: std::logic_error (bad config, bad input geometry, violated
// preconditions) exits 1; IntegrationError and every other runtime failure
// (optimizer non-convergence, filesystem trouble mid-run) exits 2. File
// readers throw runtime errors for unreadable input, which is an input
// problem here, so reads are wrapped and rethrown as logic errors.

#include "cmflow/cli_runner.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmflow/affine_bridge.hpp"
#include "cmflow/circle_field.hpp"
#include "cmflow/conformal_metric.hpp"
#include "cmflow/diagnostics.hpp"
#include "cmflow/flow_engine.hpp"
#include "cmflow/io.hpp"
#include "cmflow/presets.hpp"
#include "cmflow/verify.hpp"

namespace cmflow {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

// Carries a message already prefixed with the offending file, so wrapping
// layers know not to prefix it again.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

[[noreturn]] void fail(const fs::path& path, const std::string& why) {
  throw ConfigError(path.string() + ": " + why);
}

// Readers report unreadable or malformed files as runtime errors; at the CLI
// boundary those are input problems, not computation failures.
template <typename F>
auto as_input(F&& read) {
  try {
    return read();
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(e.what());
  }
}

std::optional<fs::path> output_root() {
  const char* env = std::getenv("CMFLOW_OUTPUT_ROOT");
  if (env != nullptr && *env != '\0') return fs::path(env);
  return std::nullopt;
}

fs::path resolve_output_dir(const fs::path& configured) {
  if (auto root = output_root())
    return configured.is_absolute() ? *root / configured.relative_path()
                                    : *root / configured;
  return configured;
}

// stem + suffix next to the input, or under the output root when one is set.
fs::path derived_output(const fs::path& input, const std::string& suffix) {
  fs::path base = input.parent_path();
  if (auto root = output_root()) {
    fs::create_directories(*root);
    base = *root;
  }
  return base / (input.stem().string() + suffix);
}

// Held for the duration of a run; concurrent runs must target distinct
// output directories. O_EXCL makes the creation race-free.
class LockFile {
 public:
  explicit LockFile(fs::path path) : path_(std::move(path)) {
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
      if (errno == EEXIST)
        throw std::invalid_argument(
            path_.string() +
            ": output directory is locked by another run; concurrent runs "
            "need distinct output directories");
      throw std::runtime_error(path_.string() + ": cannot create lock file: " +
                               std::strerror(errno));
    }
    ::close(fd);
  }
  ~LockFile() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  LockFile(const LockFile&) = delete;
  LockFile& operator=(const LockFile&) = delete;

 private:
  fs::path path_;
};

// ---- config parsing ------------------------------------------------------

ordered_json parse_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  ordered_json j = ordered_json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(path, "not valid JSON");
  return j;
}

void check_keys(const ordered_json& obj, const fs::path& path,
                const std::string& where,
                std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional = {}) {
  if (!obj.is_object()) fail(path, where + " must be a JSON object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : required) known = known || item.key() == k;
    for (const char* k : optional) known = known || item.key() == k;
    if (!known) fail(path, where + " has unknown key \"" + item.key() + "\"");
  }
  for (const char* k : required)
    if (!obj.contains(k)) fail(path, where + " is missing key \"" + k + "\"");
}

double need_number(const ordered_json& obj, const fs::path& path,
                   const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(path, where + "." + key + " must be a number");
  return v.get<double>();
}

long need_integer(const ordered_json& obj, const fs::path& path,
                  const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer())
    fail(path, where + "." + key + " must be an integer");
  return v.get<long>();
}

std::vector<double> number_array(const ordered_json& v, const fs::path& path,
                                 const std::string& where) {
  if (!v.is_array()) fail(path, where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& e : v) {
    if (!e.is_number()) fail(path, where + " must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

// a[k] multiplies cos(k theta), b[k] multiplies sin((k+1) theta). The field
// must fit strictly below the Nyquist frequency of the requested grid.
CircleField field_from_coefficients(const std::vector<double>& a,
                                    const std::vector<double>& b, int n,
                                    const fs::path& path,
                                    const std::string& where) {
  if (a.empty()) fail(path, where + ".a needs at least the constant entry");
  int top = 0;
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] != 0.0) top = std::max(top, static_cast<int>(k));
  for (size_t k = 0; k < b.size(); ++k)
    if (b[k] != 0.0) top = std::max(top, static_cast<int>(k) + 1);
  if (2 * top >= n)
    fail(path, where + ": mode " + std::to_string(top) +
                   " does not fit below the Nyquist frequency of n_samples = " +
                   std::to_string(n));
  return CircleField::from_function(n, [&](double t) {
    double v = a[0];
    for (size_t k = 1; k < a.size(); ++k) v += a[k] * std::cos(k * t);
    for (size_t k = 0; k < b.size(); ++k) v += b[k] * std::sin((k + 1) * t);
    return v;
  });
}

struct RunPlan {
  double t_end;
  double cadence;
  StepperConfig stepper;
  fs::path output_dir;
  ConformalMetric metric;
};

ConformalMetric build_preset(const ordered_json& spec, const fs::path& path,
                             double alpha, int n,
                             const std::optional<std::uint64_t>& seed) {
  if (!spec.is_object() || !spec.contains("name"))
    fail(path, "initial.preset needs a \"name\"");
  const auto& name_v = spec.at("name");
  if (!name_v.is_string()) fail(path, "initial.preset.name must be a string");
  std::string name = name_v.get<std::string>();

  auto make = [&](auto&& ctor) -> ConformalMetric {
    try {
      return ctor();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::logic_error& e) {
      fail(path, "initial.preset \"" + name + "\": " + e.what());
    }
  };

  if (name == "round") {
    check_keys(spec, path, "initial.preset", {"name"});
    return make([&] { return round_state(alpha, n); });
  }
  if (name == "perturbed_round") {
    check_keys(spec, path, "initial.preset", {"name", "mode", "amplitude"});
    int mode = static_cast<int>(need_integer(spec, path, "preset", "mode"));
    double amplitude = need_number(spec, path, "preset", "amplitude");
    return make([&] { return perturbed_round(alpha, n, mode, amplitude); });
  }
  if (name == "theorem_a_extremal" || name == "theorem_b_extremal") {
    check_keys(spec, path, "initial.preset", {"name", "lambda"}, {"angle"});
    double lambda = need_number(spec, path, "preset", "lambda");
    double angle =
        spec.contains("angle") ? need_number(spec, path, "preset", "angle") : 0.0;
    return make([&] {
      return name == "theorem_a_extremal"
                 ? theorem_a_extremal(alpha, n, lambda, angle)
                 : theorem_b_extremal(alpha, n, lambda, angle);
    });
  }
  if (name == "random_bandlimited") {
    check_keys(spec, path, "initial.preset", {"name", "modes", "amplitude"});
    if (!seed) fail(path, "initial data is randomized but no \"seed\" is given");
    int modes = static_cast<int>(need_integer(spec, path, "preset", "modes"));
    double amplitude = need_number(spec, path, "preset", "amplitude");
    return make(
        [&] { return random_bandlimited(alpha, n, modes, amplitude, *seed); });
  }
  fail(path, "unknown preset \"" + name + "\"");
}

RunPlan parse_config(const fs::path& path) {
  ordered_json j = parse_json_file(path);
  check_keys(j, path, "config",
             {"alpha", "n_samples", "t_end", "cadence", "output_dir", "initial"},
             {"cfl", "max_dt", "projections", "seed"});

  double alpha = need_number(j, path, "config", "alpha");
  if (alpha != 1.0 && alpha != 4.0) fail(path, "alpha must be 1 or 4");
  long n_long = need_integer(j, path, "config", "n_samples");
  if (n_long < 8 || n_long % 2 != 0 || n_long > (1L << 24))
    fail(path, "n_samples must be even and at least 8");
  int n = static_cast<int>(n_long);

  double t_end = need_number(j, path, "config", "t_end");
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    fail(path, "t_end must be finite and nonnegative");
  double cadence = need_number(j, path, "config", "cadence");
  if (!(cadence > 0.0) || !std::isfinite(cadence))
    fail(path, "cadence must be positive");

  StepperConfig stepper;
  if (j.contains("cfl")) stepper.cfl = need_number(j, path, "config", "cfl");
  if (j.contains("max_dt"))
    stepper.max_dt = need_number(j, path, "config", "max_dt");
  if (j.contains("projections")) {
    const auto& proj = j.at("projections");
    check_keys(proj, path, "projections", {}, {"length", "orthogonality"});
    if (proj.contains("length")) {
      if (!proj.at("length").is_boolean())
        fail(path, "projections.length must be a boolean");
      stepper.projection_length = proj.at("length").get<bool>();
    }
    if (proj.contains("orthogonality")) {
      if (!proj.at("orthogonality").is_boolean())
        fail(path, "projections.orthogonality must be a boolean");
      stepper.projection_orthogonality = proj.at("orthogonality").get<bool>();
    }
  }
  try {
    stepper.validate();
  } catch (const std::logic_error& e) {
    fail(path, e.what());
  }

  std::optional<std::uint64_t> seed;
  if (j.contains("seed")) {
    long s = need_integer(j, path, "config", "seed");
    if (s < 0) fail(path, "seed must be nonnegative");
    seed = static_cast<std::uint64_t>(s);
  }

  const auto& out_v = j.at("output_dir");
  if (!out_v.is_string()) fail(path, "output_dir must be a string");
  fs::path output_dir = out_v.get<std::string>();
  if (output_dir.empty()) fail(path, "output_dir must not be empty");

  const auto& initial = j.at("initial");
  check_keys(initial, path, "initial", {},
             {"preset", "fourier_u", "fourier_w", "polygon"});
  if (initial.size() != 1)
    fail(path,
         "initial must hold exactly one of preset, fourier_u, fourier_w, "
         "polygon");

  bool randomized = initial.contains("preset") &&
                    initial.at("preset").is_object() &&
                    initial.at("preset").value("name", "") == "random_bandlimited";
  if (seed && !randomized)
    fail(path, "seed is given but the initial data is deterministic");

  auto build_metric = [&]() -> ConformalMetric {
    if (initial.contains("preset"))
      return build_preset(initial.at("preset"), path, alpha, n, seed);
    if (initial.contains("polygon")) {
      if (alpha != 1.0) fail(path, "polygon initial data is specific to alpha = 1");
      const auto& poly_v = initial.at("polygon");
      if (!poly_v.is_string()) fail(path, "initial.polygon must be a file path");
      auto vertices = as_input(
          [&] { return read_polygon_csv(fs::path(poly_v.get<std::string>())); });
      return ingest_polygon(vertices, n);
    }
    const char* key = initial.contains("fourier_u") ? "fourier_u" : "fourier_w";
    const auto& coeffs = initial.at(key);
    check_keys(coeffs, path, std::string("initial.") + key, {"a"}, {"b"});
    std::vector<double> a =
        number_array(coeffs.at("a"), path, std::string("initial.") + key + ".a");
    std::vector<double> b =
        coeffs.contains("b")
            ? number_array(coeffs.at("b"), path, std::string("initial.") + key + ".b")
            : std::vector<double>{};
    CircleField f =
        field_from_coefficients(a, b, n, path, std::string("initial.") + key);
    if (std::string(key) == "fourier_w") {
      if (!(f.min() > 0.0))
        fail(path, "initial.fourier_w must describe a positive u^-3");
      f = pow_field(f, -1.0 / 3.0);
    }
    return ConformalMetric(alpha, std::move(f));
  };

  try {
    return RunPlan{t_end, cadence, stepper, std::move(output_dir), build_metric()};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::logic_error& e) {
    fail(path, std::string("initial: ") + e.what());
  }
}

// ---- run outputs ---------------------------------------------------------

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::ReachedEnd: return "reached_end";
    case Termination::Steady: return "steady";
    case Termination::Horizon: return "horizon";
  }
  return "unknown";
}

ordered_json summarize(const RunResult& res, const RunPlan& plan) {
  const TrajectoryRecord& rec = res.record;
  size_t last = rec.size() - 1;

  int rbar_decrease = 0, rbar_above_one = 0, length_drift = 0;
  int orthogonality_drift = 0, area_increase = 0;
  for (size_t i = 0; i < rec.size(); ++i) {
    if (rec.rbar[i] > 1.0 + 1e-9) ++rbar_above_one;
    if (std::abs(rec.length[i] - rec.length[0]) / rec.length[0] > 1e-6)
      ++length_drift;
    if (i + 1 < rec.size()) {
      if (rec.rbar[i + 1] - rec.rbar[i] < -1e-10) ++rbar_decrease;
      if (plan.metric.alpha == 1.0 && rec.area[i + 1] > rec.area[i])
        ++area_increase;
    }
  }
  if (plan.metric.alpha == 1.0) {
    for (const FlowState& s : res.snapshots) {
      auto [ic, is] = orthogonality_integrals(s.metric.u);
      if (std::hypot(ic, is) > 1e-8) ++orthogonality_drift;
    }
  }

  ordered_json summary;
  summary["final_rbar"] = rec.rbar[last];
  summary["final_f2"] = rec.f2[last];
  summary["termination"] = termination_name(res.termination);

  // Decay fit over the middle of the run; the early transient and the
  // roundoff floor both bias the log-linear slope.
  summary["decay_rate"] = nullptr;
  summary["decay_window"] = nullptr;
  summary["decay_r2"] = nullptr;
  try {
    DecayFit fit = fit_decay(rec.times, rec.f2, 0.2 * rec.times[last],
                             0.8 * rec.times[last]);
    summary["decay_rate"] = fit.rate;
    summary["decay_window"] = {fit.window_start, fit.window_end};
    summary["decay_r2"] = fit.r_squared;
  } catch (const std::invalid_argument&) {
    // too few positive samples in the window; the summary keeps nulls
  }

  summary["violations"] = {{"rbar_decrease", rbar_decrease},
                           {"rbar_above_one", rbar_above_one},
                           {"length_drift", length_drift},
                           {"orthogonality_drift", orthogonality_drift},
                           {"area_increase", area_increase}};
  summary["snapshot_times"] = rec.times;
  return summary;
}

void write_summary_json(const fs::path& path, const ordered_json& summary) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << summary.dump(2) << '\n';
  if (!out.good())
    throw std::runtime_error(path.string() + ": write failed");
}

// ---- commands ------------------------------------------------------------

template <typename F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const IntegrationError& e) {
    std::fprintf(stderr, "cmflow: integration failed at t = %.6g: %s\n", e.time,
                 e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "cmflow: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "cmflow: %s\n", e.what());
    return 2;
  }
}

}  // namespace

int cmd_run(const std::string& config_path) {
  return guarded([&]() {
    RunPlan plan = parse_config(config_path);
    fs::path outdir = resolve_output_dir(plan.output_dir);
    fs::create_directories(outdir);
    LockFile lock(outdir / ".lock");

    RunResult res = run(plan.metric, plan.stepper, plan.t_end, plan.cadence);

    write_trajectory_csv(outdir / "trajectory.csv", res.record);
    char name[32];
    for (size_t i = 0; i < res.snapshots.size(); ++i) {
      std::snprintf(name, sizeof name, "snapshot_%04zu.json", i);
      write_metric_json(outdir / name, res.snapshots[i].metric);
      if (plan.metric.alpha == 1.0) {
        std::snprintf(name, sizeof name, "curve_%04zu.csv", i);
        write_curve_csv(outdir / name, res.snapshots[i].metric,
                        reconstruct_curve(res.snapshots[i].metric));
      }
    }
    ordered_json summary = summarize(res, plan);
    write_summary_json(outdir / "summary.json", summary);

    std::printf("run %s: %zu records to t = %.6g, final R_bar = %.12g (%s)\n",
                outdir.string().c_str(), res.record.size(),
                res.record.times.back(), res.record.rbar.back(),
                termination_name(res.termination));
    return 0;
  });
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  return guarded([&]() {
    SuiteResult result = run_suite(suite, seed);
    std::printf("suite %s (seed %llu)\n", result.suite.c_str(),
                static_cast<unsigned long long>(seed));
    int passed = 0;
    for (const CheckResult& c : result.checks) {
      std::string bound;
      char buf[64];
      if (std::isfinite(c.low) && std::isfinite(c.high)) {
        std::snprintf(buf, sizeof buf, "within [%g, %g]", c.low, c.high);
      } else if (std::isfinite(c.high)) {
        std::snprintf(buf, sizeof buf, "<= %g", c.high);
      } else {
        std::snprintf(buf, sizeof buf, ">= %g", c.low);
      }
      std::printf("  %s  %s | measured %.6e | required %s\n",
                  c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, buf);
      passed += c.passed ? 1 : 0;
    }
    std::printf("suite %s: %d/%zu checks passed\n", result.suite.c_str(), passed,
                result.checks.size());
    return result.all_passed() ? 0 : 1;
  });
}

int cmd_normalize(const std::string& metric_path) {
  return guarded([&]() {
    fs::path path(metric_path);
    ConformalMetric m = as_input([&] { return read_metric_json(path); });
    if (m.alpha != 1.0)
      fail(path, "normalization applies to alpha = 1 metrics");
    auto [ic, is] = orthogonality_integrals(m.u);
    if (std::hypot(ic, is) > 1e-10) {
      char msg[160];
      std::snprintf(msg, sizeof msg,
                    "state violates the mode-1 condition: int u^-3 cos = %.3e, "
                    "int u^-3 sin = %.3e",
                    ic, is);
      fail(path, msg);
    }

    Sl2Normalization norm = sl2_normalize(m);
    write_metric_json(derived_output(path, ".normalized.json"), norm.metric);

    ordered_json params;
    params["lambda"] = norm.params.lambda;
    params["alpha_angle"] = norm.params.alpha_angle;
    params["perimeter"] = norm.perimeter;
    params["iterations"] = norm.iterations;
    write_summary_json(derived_output(path, ".sl2.json"), params);

    double bound = 2.0 * std::sqrt(6.0 * kPi * euclidean_area(norm.metric));
    InequalityReport lbdd{norm.perimeter, bound, bound - norm.perimeter,
                          (bound - norm.perimeter) / std::abs(bound)};
    write_inequality_json(derived_output(path, ".lbdd.json"), lbdd);

    std::printf(
        "normalized %s: lambda = %.12g, angle = %.12g, perimeter = %.12g, "
        "perimeter slack under 2 sqrt(6 pi A) = %.6e\n",
        path.string().c_str(), norm.params.lambda, norm.params.alpha_angle,
        norm.perimeter, lbdd.deficit);
    return 0;
  });
}

int cmd_reconstruct(const std::string& metric_path) {
  return guarded([&]() {
    fs::path path(metric_path);
    ConformalMetric m = as_input([&] { return read_metric_json(path); });
    CurveEmbedding emb = reconstruct_curve(m);
    fs::path out = derived_output(path, ".curve.csv");
    write_curve_csv(out, m, emb);
    std::printf(
        "reconstructed %s: area = %.12g, perimeter = %.12g, closure defect = "
        "%.3e\n",
        out.string().c_str(), emb.area, emb.perimeter, emb.closure_defect);
    return 0;
  });
}

int cmd_ingest(const std::string& polygon_path, int resample) {
  return guarded([&]() {
    fs::path path(polygon_path);
    auto vertices = as_input([&] { return read_polygon_csv(path); });
    ConformalMetric m = ingest_polygon(vertices, resample);
    fs::path out = derived_output(path, ".metric.json");
    write_metric_json(out, m);
    std::printf("ingested %zu vertices to %s: n = %d, arc length = %.12g\n",
                vertices.size(), out.string().c_str(), m.u.size(),
                arc_length(m));
    return 0;
  });
}

int cmd_inequality(const std::string& which, const std::string& field_path) {
  return guarded([&]() {
    fs::path path(field_path);
    if (which != "A" && which != "B")
      throw std::invalid_argument("inequality selector must be A or B");
    CircleField u = as_input([&] { return read_field_json(path); });
    if (!(u.min() > 0.0)) fail(path, "field must be strictly positive");
    InequalityReport report =
        which == "A" ? theorem_a_report(u) : theorem_b_report(u);
    fs::path out = derived_output(
        path, which == "A" ? ".inequality_a.json" : ".inequality_b.json");
    write_inequality_json(out, report);
    std::printf("inequality %s on %s: value = %.12g, bound = %.12g, deficit = "
                "%.6e\n",
                which.c_str(), path.string().c_str(), report.functional_value,
                report.sharp_bound, report.deficit);
    return 0;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"conformal metric flows on the circle: flow runs, property "
               "verification, and curve tools"};
  app.require_subcommand(1);

  std::string config_path, metric_path, polygon_path, field_path;
  std::string suite, which;
  std::uint64_t seed = 20260817;
  int resample = 256;

  CLI::App* c_run = app.add_subcommand("run", "integrate a configured flow");
  c_run->add_option("config", config_path, "config JSON path")->required();

  std::string suite_help = "one of: ";
  for (size_t i = 0; i < suite_names().size(); ++i)
    suite_help += (i ? ", " : "") + suite_names()[i];
  CLI::App* c_verify =
      app.add_subcommand("verify", "run a randomized property suite");
  c_verify->add_option("suite", suite, suite_help)->required();
  c_verify->add_option("--seed", seed, "seed for the randomized draws");

  CLI::App* c_norm = app.add_subcommand(
      "normalize", "minimize the perimeter over the SL(2) orbit");
  c_norm->add_option("metric", metric_path, "metric JSON path")->required();

  CLI::App* c_recon = app.add_subcommand(
      "reconstruct", "emit the convex curve of an alpha = 1 metric");
  c_recon->add_option("metric", metric_path, "metric JSON path")->required();

  CLI::App* c_ingest =
      app.add_subcommand("ingest", "fit a convex polygon into a metric");
  c_ingest->add_option("polygon", polygon_path, "polygon CSV path")->required();
  c_ingest->add_option("--resample", resample, "grid size of the fitted metric");

  CLI::App* c_ineq = app.add_subcommand(
      "inequality", "evaluate a sharp inequality on a positive field");
  c_ineq->add_option("which", which, "A (orthogonality-constrained) or B")
      ->required();
  c_ineq->add_option("field", field_path, "field JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (c_run->parsed()) return cmd_run(config_path);
  if (c_verify->parsed()) return cmd_verify(suite, seed);
  if (c_norm->parsed()) return cmd_normalize(metric_path);
  if (c_recon->parsed()) return cmd_reconstruct(metric_path);
  if (c_ingest->parsed()) return cmd_ingest(polygon_path, resample);
  if (c_ineq->parsed()) return cmd_inequality(which, field_path);
  return 1;
}

}  // namespace cmflow
