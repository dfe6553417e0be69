#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cdirac/fields.hpp"

namespace cdirac {

struct CheckRecord {
  std::string id;
  std::string claim;       // statement of the identity or bound being verified
  double measured = 0.0;
  double reference = 0.0;  // 0 means `measured` is a defect that must vanish
  double tolerance = 0.0;
  bool pass = false;
  double runtime_ms = 0.0;
};

struct Report {
  int schema_version = 1;
  std::uint64_t seed = 0;
  std::vector<int> dimensions;
  std::vector<CheckRecord> records;

  bool all_pass() const;
  int failed() const;
};

// Line-oriented `[section]` / `key = value` configuration.  Unknown sections
// or keys are rejected.
struct SuiteConfig {
  std::vector<int> dimensions = {2, 3};
  std::uint64_t seed = 94612;
  double grid_L = 4.0;          // box half-width in units of lambda
  int grid_m = 161;             // nodes per axis, must be == 1 (mod 4)
  int stencil_order = 2;
  int quad_order = 20;          // surface quadrature order for kernel checks
  double lambda = 1.0;
  std::vector<double> center;   // zero-padded per dimension
  double amplitude_scale = 1.0; // != 1 models corrupted input data
  bool timings = false;         // serialize per-check runtimes
  std::string report_path;
  std::map<std::string, double> tolerance_overrides;

  static SuiteConfig from_file(const std::string& path);
  static SuiteConfig from_stream(std::istream& in);
  void validate() const;

  RealVec center_for(int n) const;
};

// Run every suite check; deterministic for fixed config and seed.
Report run_suite(const SuiteConfig& cfg);

// Stable JSON serialization (records sorted by id; runtimes only when
// `timings` is set).
std::string report_to_json(const Report& report, bool timings);

// Radial profile of the bubble family as CSV with header
// r,length,density,cumulative; `samples` rows from r = 0 to r_max.
std::string profile_csv(const BubbleParams& p, double r_max, int samples);

}  // namespace cdirac
