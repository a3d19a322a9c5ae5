#pragma once

// Run configuration shared by the CLI tool and its tests: a flat set of
// options serialized as sorted "# key=value" comment lines at the top of
// every output table, so any result file carries enough information to
// reproduce it.

#include <cstdint>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>

namespace apm {

namespace detail {

inline std::string cfg_fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

struct RunConfig {
  std::string subcommand;
  std::string model = "rayleigh";
  double m = 1.0;
  double xi = 1.0;
  std::string hops;  // "m1:xi1,m2:xi2,..."
  double a = 1.0;
  double b = 1.0;
  int grid_n = 0;
  double grid_db = 0.0;
  std::string snr_db;  // comma list
  std::uint64_t bits = 1000000;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  double eps = 1e-4;
  std::string units = "nats";
  std::string measure = "capacity";
  std::string in_path;

  std::map<std::string, std::string> to_map() const {
    using detail::cfg_fmt17;
    return {{"subcommand", subcommand},
            {"model", model},
            {"m", cfg_fmt17(m)},
            {"xi", cfg_fmt17(xi)},
            {"hops", hops},
            {"a", cfg_fmt17(a)},
            {"b", cfg_fmt17(b)},
            {"grid_n", std::to_string(grid_n)},
            {"grid_db", cfg_fmt17(grid_db)},
            {"snr_db", snr_db},
            {"bits", std::to_string(bits)},
            {"samples", std::to_string(samples)},
            {"seed", std::to_string(seed)},
            {"tol", cfg_fmt17(tol)},
            {"eps", cfg_fmt17(eps)},
            {"units", units},
            {"measure", measure},
            {"in", in_path}};
  }
};

inline void write_config_header(std::ostream& out, const RunConfig& cfg) {
  for (const auto& [k, v] : cfg.to_map()) out << "# " << k << "=" << v << "\n";
}

/// Reads the leading "# key=value" lines of a result file back into a map.
/// write_config_header followed by parse_config_header is lossless.
inline std::map<std::string, std::string> parse_config_header(std::istream& in) {
  std::map<std::string, std::string> m;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) != 0) break;
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    m[line.substr(2, eq - 2)] = line.substr(eq + 1);
  }
  return m;
}

}  // namespace apm
