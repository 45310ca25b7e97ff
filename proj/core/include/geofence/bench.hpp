#pragma once

// End-to-end benchmark run: zones and users from a BenchConfig, optional zone
// expansion, token generation, encryption, and parallel matching.
//
// Report CSV, one row per phase:
//
//   # gaussian_sigma=d/8
//   d,encoding,coverage,dist,shape,alpha,workers,seed,bits,zones,users,
//   phase,wall_ms,pairings,tokens,non_wildcards,improvement,time_ratio
//
// phase is one of expansion, tokengen, encryption, query. pairings is the
// cover pairing total for expansion and tokengen and the executed pairing
// count for query. improvement is query pairings without expansion over
// query pairings with expansion; time_ratio is the same ratio of wall times.
// Both are exactly 1 when alpha = 0.

#include <iosfwd>
#include <string>
#include <vector>

#include "geofence/workload.hpp"

namespace geofence::bench {

using workload::BenchConfig;

struct PhaseRow {
  std::string phase;
  double wall_ms = 0.0;
  std::uint64_t pairings = 0;
  std::uint64_t tokens = 0;
  std::uint64_t non_wildcards = 0;
  double improvement = 1.0;
  double time_ratio = 1.0;

  bool operator==(const PhaseRow&) const = default;
};

struct BenchReport {
  BenchConfig config;
  std::vector<PhaseRow> rows;

  const PhaseRow& row(const std::string& phase) const;
  bool operator==(const BenchReport&) const = default;
};

/// Throws workload::ConfigError on an invalid config.
BenchReport run_bench(const BenchConfig& cfg);

std::string csv_header();
void write_report(std::ostream& os, const BenchReport& r);
/// Inverse of write_report; doubles round-trip exactly.
BenchReport read_report(std::istream& is);

}  // namespace geofence::bench
