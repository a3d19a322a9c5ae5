#pragma once

// Measurement-driven workflow: exponentially spaced SNR grids, simulated
// BER measurement campaigns, stable interpolation of measurement sets, and
// interpolation-based capacity prediction, with CSV/JSON persistence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "apm/channels.hpp"
#include "apm/curves.hpp"
#include "apm/errors.hpp"
#include "apm/interpolation.hpp"
#include "apm/measures.hpp"
#include "apm/relationships.hpp"

namespace apm {

struct MeasurementPoint {
  double snr_db;
  double value;
  std::optional<double> stderr_;
  bool censored = false;  // zero-error campaign point, value below resolution
};

/// An ordered set of (SNR in dB, measured value) points with optional
/// modulation metadata.
struct MeasurementSet {
  std::vector<MeasurementPoint> points;
  std::optional<ModulationParams> modulation;
  std::string label;
};

/// N grid points uniform in dB, symmetric about 0 dB with endpoints at
/// +-bound_db.
inline std::vector<double> make_grid(int n, double bound_db) {
  if (n < 2) throw std::domain_error("make_grid: requires N >= 2");
  if (!(bound_db > 0.0)) throw std::domain_error("make_grid: bound_db must be > 0");
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i)
    grid[i] = (2.0 * i / (n - 1.0) - 1.0) * bound_db;
  return grid;
}

/// Runs the bit-level simulator at every grid point with a derived per-point
/// sub-seed. Points where no errors occurred are recorded as censored zeros.
inline MeasurementSet measure_aber_campaign(const FadingModel& model,
                                            const std::vector<double>& grid_db,
                                            const ModulationParams& p,
                                            std::uint64_t bits_per_point,
                                            std::uint64_t seed) {
  if (bits_per_point < 1)
    throw std::domain_error("measure_aber_campaign: bits_per_point must be >= 1");
  MeasurementSet set;
  set.modulation = p;
  set.label = model.name() + "-aber-campaign";
  set.points.reserve(grid_db.size());
  for (std::size_t i = 0; i < grid_db.size(); ++i) {
    std::uint64_t sub = seed;
    detail::splitmix64(sub);
    sub ^= (i + 1) * 0x9e3779b97f4a7c15ULL;
    const auto r = simulate_bit_errors(model, AverageSnr::from_db(grid_db[i]), p.a,
                                       p.b, bits_per_point, sub);
    MeasurementPoint pt;
    pt.snr_db = grid_db[i];
    // sampling noise can push the error fraction past 1/2 on a dead channel;
    // the measured quantity never exceeds it
    pt.value = std::min(0.5, r.mean);
    pt.stderr_ = r.stderr_;
    pt.censored = (r.mean == 0.0);
    set.points.push_back(pt);
  }
  return set;
}

namespace detail {

// Index of the last point usable for log-value interpolation.
inline std::ptrdiff_t last_uncensored(const MeasurementSet& set) {
  for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(set.points.size()) - 1; i >= 0;
       --i)
    if (!set.points[i].censored && set.points[i].value > 0.0) return i;
  return -1;
}

}  // namespace detail

/// Evaluates the measurement set at average SNR gbar (linear) by local
/// barycentric Lagrange interpolation of degree up to 7 in the coordinates
/// (dB, log10 value). Exact at nodes. Below the grid the lowest-node value
/// (capped at 1/2) is held; above the last uncensored node the curve is
/// extended log-linearly in dB. Output is clamped to [0, 1/2].
inline double interpolate_set(const MeasurementSet& set, double gbar) {
  if (set.points.empty()) throw std::domain_error("interpolate_set: empty set");
  if (!(gbar > 0.0)) throw std::domain_error("interpolate_set: requires gbar > 0");
  const double x = 10.0 * std::log10(gbar);

  for (const auto& pt : set.points)
    if (pt.snr_db == x) return pt.value;

  std::vector<std::pair<double, double>> nodes;  // (dB, log10 value)
  nodes.reserve(set.points.size());
  for (const auto& pt : set.points)
    if (!pt.censored && pt.value > 0.0)
      nodes.emplace_back(pt.snr_db, std::log10(pt.value));
  if (nodes.empty()) return 0.0;  // fully censored set

  auto clamp_value = [](double v) { return std::min(0.5, std::max(0.0, v)); };

  if (x <= nodes.front().first && x <= set.points.front().snr_db)
    return clamp_value(set.points.front().value);

  if (x >= nodes.back().first) {
    // log-linear tail from the last two uncensored points
    if (nodes.size() == 1) return clamp_value(std::pow(10.0, nodes.back().second));
    const auto& p1 = nodes[nodes.size() - 2];
    const auto& p2 = nodes.back();
    const double slope = (p2.second - p1.second) / (p2.first - p1.first);
    return clamp_value(std::pow(10.0, p2.second + slope * (x - p2.first)));
  }

  // window of up to 8 nodes around the bracketing interval
  std::size_t hi = 0;
  while (hi < nodes.size() && nodes[hi].first < x) ++hi;
  const std::size_t half = 4;
  const std::size_t lo_idx = hi > half ? hi - half : 0;
  const std::size_t hi_idx = std::min(nodes.size(), lo_idx + 2 * half);
  const std::size_t lo_adj = hi_idx >= 2 * half ? hi_idx - 2 * half : 0;
  std::vector<std::pair<double, double>> window(nodes.begin() + lo_adj,
                                                nodes.begin() + hi_idx);
  return clamp_value(std::pow(10.0, lagrange_interp(window, x)));
}

/// Capacity predicted from a measured BER set: feeds the interpolant into
/// the capacity-from-BER integral over the support where the measurements
/// constrain it.
inline double ibp_acc(const MeasurementSet& set, AverageSnr gbar, double tol) {
  if (!set.modulation)
    throw CapabilityError("ibp_acc: measurement set has no modulation metadata");
  if (set.points.empty()) throw std::domain_error("ibp_acc: empty set");
  const double lo_lin = std::pow(10.0, set.points.front().snr_db / 10.0);
  const double hi_lin = std::pow(10.0, set.points.back().snr_db / 10.0);
  if (!(gbar.value >= lo_lin / 1e3) || !(gbar.value <= hi_lin * 1e3))
    throw std::domain_error("ibp_acc: gbar outside the measured range");
  ApmCurve aber;
  aber.label = set.label.empty() ? "measured-aber" : set.label;
  aber.real_eval = [&set](double g) { return interpolate_set(set, g); };
  KernelSupport support{lo_lin / (1e3 * gbar.value), hi_lin * 1e3 / gbar.value};
  return acc_from_aber(aber, *set.modulation, gbar, tol, support);
}

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void validate_set(MeasurementSet& set, const std::string& origin) {
  bool sorted = std::is_sorted(
      set.points.begin(), set.points.end(),
      [](const MeasurementPoint& a, const MeasurementPoint& b) {
        return a.snr_db < b.snr_db;
      });
  if (!sorted) {
    std::fprintf(stderr, "note: %s: points were unsorted, sorting by snr_db\n",
                 origin.c_str());
    std::stable_sort(set.points.begin(), set.points.end(),
                     [](const MeasurementPoint& a, const MeasurementPoint& b) {
                       return a.snr_db < b.snr_db;
                     });
  }
  for (std::size_t i = 1; i < set.points.size(); ++i)
    if (set.points[i].snr_db == set.points[i - 1].snr_db)
      throw ParseError(origin + ": duplicate snr_db " +
                       fmt17(set.points[i].snr_db));
  for (const auto& pt : set.points) {
    if (!(pt.value >= 0.0) || !(pt.value <= 0.5))
      throw ParseError(origin + ": value " + fmt17(pt.value) +
                       " outside [0, 1/2] at snr_db " + fmt17(pt.snr_db));
    if (pt.stderr_ && !(*pt.stderr_ >= 0.0))
      throw ParseError(origin + ": negative stderr at snr_db " + fmt17(pt.snr_db));
  }
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

inline void write_set(const MeasurementSet& set, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("write_set: cannot open " + path);
  if (detail::ends_with(path, ".json")) {
    nlohmann::json j;
    j["label"] = set.label;
    if (set.modulation)
      j["modulation"] = {{"a", set.modulation->a}, {"b", set.modulation->b}};
    auto& pts = j["points"] = nlohmann::json::array();
    for (const auto& pt : set.points) {
      nlohmann::json jp = {{"snr_db", pt.snr_db}, {"value", pt.value}};
      if (pt.stderr_) jp["stderr"] = *pt.stderr_;
      if (pt.censored) jp["censored"] = true;
      pts.push_back(std::move(jp));
    }
    out << j.dump(2) << "\n";
    return;
  }
  if (!set.label.empty()) out << "# label=" << set.label << "\n";
  if (set.modulation) {
    out << "# modulation_a=" << detail::fmt17(set.modulation->a) << "\n";
    out << "# modulation_b=" << detail::fmt17(set.modulation->b) << "\n";
  }
  const bool has_stderr =
      std::any_of(set.points.begin(), set.points.end(),
                  [](const MeasurementPoint& p) { return p.stderr_.has_value(); });
  out << (has_stderr ? "snr_db,value,stderr\n" : "snr_db,value\n");
  for (const auto& pt : set.points) {
    out << detail::fmt17(pt.snr_db) << "," << detail::fmt17(pt.value);
    if (has_stderr) out << "," << detail::fmt17(pt.stderr_.value_or(0.0));
    out << "\n";
  }
}

inline MeasurementSet read_set(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("read_set: cannot open " + path);
  MeasurementSet set;
  if (detail::ends_with(path, ".json")) {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("read_set: " + path + ": " + e.what());
    }
    set.label = j.value("label", std::string());
    if (j.contains("modulation"))
      set.modulation.emplace(j["modulation"].value("a", 1.0),
                             j["modulation"].value("b", 1.0));
    if (!j.contains("points") || !j["points"].is_array())
      throw ParseError("read_set: " + path + ": missing points array");
    for (const auto& jp : j["points"]) {
      MeasurementPoint pt;
      if (!jp.contains("snr_db") || !jp.contains("value"))
        throw ParseError("read_set: " + path + ": point missing snr_db/value");
      pt.snr_db = jp["snr_db"].get<double>();
      pt.value = jp["value"].get<double>();
      if (jp.contains("stderr")) pt.stderr_ = jp["stderr"].get<double>();
      pt.censored = jp.value("censored", false);
      set.points.push_back(pt);
    }
    detail::validate_set(set, path);
    return set;
  }
  std::string line;
  int line_no = 0;
  std::optional<double> mod_a, mod_b;
  bool header_seen = false;
  bool has_stderr_col = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = line.substr(1);
      const auto eq = body.find('=');
      if (eq == std::string::npos) continue;
      std::string key = body.substr(0, eq);
      key.erase(0, key.find_first_not_of(' '));
      key.erase(key.find_last_not_of(' ') + 1);
      const std::string val = body.substr(eq + 1);
      try {
        if (key == "label") set.label = val;
        else if (key == "modulation_a") mod_a = std::stod(val);
        else if (key == "modulation_b") mod_b = std::stod(val);
      } catch (const std::exception&) {
        throw ParseError("read_set: " + path + ":" + std::to_string(line_no) +
                         ": bad value for " + key);
      }
      continue;
    }
    if (!header_seen) {
      if (line.rfind("snr_db,value", 0) != 0)
        throw ParseError("read_set: " + path + ":" + std::to_string(line_no) +
                         ": expected header snr_db,value[,stderr]");
      has_stderr_col = line == "snr_db,value,stderr";
      header_seen = true;
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != (has_stderr_col ? 3u : 2u))
      throw ParseError("read_set: " + path + ":" + std::to_string(line_no) +
                       ": expected " + (has_stderr_col ? "3" : "2") + " fields");
    MeasurementPoint pt;
    try {
      pt.snr_db = std::stod(fields[0]);
      pt.value = std::stod(fields[1]);
      if (has_stderr_col) pt.stderr_ = std::stod(fields[2]);
    } catch (const std::exception&) {
      throw ParseError("read_set: " + path + ":" + std::to_string(line_no) +
                       ": non-numeric field");
    }
    pt.censored = (pt.value == 0.0);
    set.points.push_back(pt);
  }
  if (!header_seen)
    throw ParseError("read_set: " + path + ": no header line found");
  if (mod_a && mod_b) set.modulation.emplace(*mod_a, *mod_b);
  detail::validate_set(set, path);
  return set;
}

}  // namespace apm
