#include "cmflow/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace cmflow {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Non-finite stands for "not applicable to this flow family".
std::string cell(double v) { return std::isfinite(v) ? fmt17(v) : ""; }

[[noreturn]] void fail(const std::filesystem::path& path,
                       const std::string& why) {
  throw std::runtime_error(path.string() + ": " + why);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(path, "cannot open for writing");
  return out;
}

void finish_out(const std::filesystem::path& path, std::ofstream& out) {
  out.flush();
  if (!out) fail(path, "write failed");
}

ordered_json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");
  ordered_json doc = ordered_json::parse(in, nullptr, false);
  if (doc.is_discarded()) fail(path, "malformed JSON");
  return doc;
}

// Strict object shape: exactly the listed keys, no extras.
void require_keys(const std::filesystem::path& path, const ordered_json& doc,
                  std::initializer_list<const char*> keys) {
  if (!doc.is_object()) fail(path, "expected a JSON object");
  for (const char* k : keys)
    if (!doc.contains(k)) fail(path, std::string("missing key \"") + k + "\"");
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* k : keys) known = known || item.key() == k;
    if (!known) fail(path, "unknown key \"" + item.key() + "\"");
  }
}

std::vector<double> number_array(const std::filesystem::path& path,
                                 const ordered_json& node, const char* name) {
  if (!node.is_array()) fail(path, std::string(name) + " must be an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number()) fail(path, std::string(name) + " holds a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

bool parses_as_number(const std::string& field) {
  const char* begin = field.c_str();
  char* end = nullptr;
  std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end)))
    ++end;
  return end != begin && end && *end == '\0';
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    fields.push_back(a == std::string::npos ? ""
                                            : field.substr(a, b - a + 1));
  }
  return fields;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const CircleField& f) {
  std::ofstream out = open_out(path);
  out << "theta,value\n";
  for (int j = 0; j < f.size(); ++j)
    out << fmt17(CircleField::grid_point(f.size(), j)) << ',' << fmt17(f[j])
        << '\n';
  finish_out(path, out);
}

void write_field_json(const std::filesystem::path& path, const CircleField& f) {
  ordered_json doc;
  doc["n"] = f.size();
  doc["samples"] = ordered_json::array();
  for (int j = 0; j < f.size(); ++j) doc["samples"].push_back(f[j]);
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  finish_out(path, out);
}

CircleField read_field_json(const std::filesystem::path& path) {
  ordered_json doc = parse_file(path);
  require_keys(path, doc, {"n", "samples"});
  if (!doc["n"].is_number_integer()) fail(path, "n must be an integer");
  int n = doc["n"].get<int>();
  std::vector<double> samples = number_array(path, doc["samples"], "samples");
  if (static_cast<int>(samples.size()) != n)
    fail(path, "samples length disagrees with n");
  try {
    return CircleField(std::move(samples));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

void write_metric_json(const std::filesystem::path& path,
                       const ConformalMetric& m) {
  ordered_json doc;
  doc["alpha"] = m.alpha;
  doc["n"] = m.u.size();
  doc["u"] = ordered_json::array();
  for (int j = 0; j < m.u.size(); ++j) doc["u"].push_back(m.u[j]);
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  finish_out(path, out);
}

ConformalMetric read_metric_json(const std::filesystem::path& path) {
  ordered_json doc = parse_file(path);
  require_keys(path, doc, {"alpha", "n", "u"});
  if (!doc["alpha"].is_number()) fail(path, "alpha must be a number");
  if (!doc["n"].is_number_integer()) fail(path, "n must be an integer");
  double alpha = doc["alpha"].get<double>();
  int n = doc["n"].get<int>();
  std::vector<double> u = number_array(path, doc["u"], "u");
  if (static_cast<int>(u.size()) != n) fail(path, "u length disagrees with n");
  try {
    return ConformalMetric(alpha, CircleField(std::move(u)));
  } catch (const std::exception& e) {
    fail(path, e.what());
  }
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const TrajectoryRecord& record) {
  std::ofstream out = open_out(path);
  out << "t,Rbar,L,F2,F4,umin,umax,area,kw_residual,harnack,"
         "a1,b1,a2,b2,a3,b3\n";
  for (size_t i = 0; i < record.size(); ++i) {
    out << fmt17(record.times[i]) << ',' << fmt17(record.rbar[i]) << ','
        << fmt17(record.length[i]) << ',' << fmt17(record.f2[i]) << ','
        << fmt17(record.f4[i]) << ',' << fmt17(record.umin[i]) << ','
        << fmt17(record.umax[i]) << ',' << cell(record.area[i]) << ','
        << cell(record.kw_residual[i]) << ',' << fmt17(record.harnack[i]);
    for (double coef : record.modes[i]) out << ',' << fmt17(coef);
    out << '\n';
  }
  finish_out(path, out);
}

void write_curve_csv(const std::filesystem::path& path,
                     const ConformalMetric& m, const CurveEmbedding& emb) {
  int n = m.u.size();
  if (static_cast<int>(emb.points.size()) != n || emb.support.size() != n)
    fail(path, "embedding grid disagrees with the metric");
  CircleField k = alpha_curvature(m);
  std::ofstream out = open_out(path);
  out << "theta,x,y,h,k\n";
  for (int j = 0; j < n; ++j)
    out << fmt17(CircleField::grid_point(n, j)) << ',' << fmt17(emb.points[j][0])
        << ',' << fmt17(emb.points[j][1]) << ',' << fmt17(emb.support[j]) << ','
        << fmt17(k[j]) << '\n';
  finish_out(path, out);
}

std::vector<std::array<double, 2>> read_polygon_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open");

  size_t col_x = 0, col_y = 1;
  std::vector<std::array<double, 2>> vertices;
  std::string line;
  size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> fields = split_csv(line);
    if (lineno == 1 && !parses_as_number(fields[0])) {
      saw_header = true;
      col_x = col_y = fields.size();
      for (size_t c = 0; c < fields.size(); ++c) {
        if (fields[c] == "x") col_x = c;
        if (fields[c] == "y") col_y = c;
      }
      if (col_x == fields.size() || col_y == fields.size())
        fail(path, "header names no x,y columns");
      continue;
    }
    if (fields.size() <= std::max(col_x, col_y))
      fail(path, "line " + std::to_string(lineno) + " has too few columns");
    const std::string& fx = fields[col_x];
    const std::string& fy = fields[col_y];
    if (!parses_as_number(fx) || !parses_as_number(fy))
      fail(path, "line " + std::to_string(lineno) + " is not numeric");
    vertices.push_back({std::strtod(fx.c_str(), nullptr),
                        std::strtod(fy.c_str(), nullptr)});
  }
  if (vertices.empty())
    fail(path, saw_header ? "no vertex rows after the header" : "empty file");
  return vertices;
}

void write_inequality_json(const std::filesystem::path& path,
                           const InequalityReport& report) {
  ordered_json doc;
  doc["value"] = report.functional_value;
  doc["bound"] = report.sharp_bound;
  doc["deficit"] = report.deficit;
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  finish_out(path, out);
}

void write_decay_json(const std::filesystem::path& path, const DecayFit& fit) {
  ordered_json doc;
  doc["rate"] = fit.rate;
  doc["window"] = {fit.window_start, fit.window_end};
  doc["r2"] = fit.r_squared;
  std::ofstream out = open_out(path);
  out << doc.dump(2) << '\n';
  finish_out(path, out);
}

}  // namespace cmflow
