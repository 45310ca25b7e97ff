#pragma once

// Cube minimization of a set of cell identifiers into wildcard patterns.
//
// Prime implicants come from Quine-McCluskey merging; the cover is essential
// primes plus a greedy pick of the prime covering the most uncovered members,
// followed by a redundancy sweep. Every returned pattern is prime, and the
// union of their expansions is exactly the input set. Cover size is not
// guaranteed minimal.
//
// Cells outside the input set are OFF: no pattern may cover them.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geofence/pattern.hpp"

namespace geofence::minimize {

inline constexpr int kMaxWidth = 32;

struct Cover {
  std::vector<Pattern> patterns;  // descending wildcard count, ties lexicographic
  int width = 0;
};

struct CoverCost {
  std::size_t non_wildcards = 0;
  std::size_t pairings = 0;  // sum of 1 + 2|J|

  bool operator==(const CoverCost&) const = default;
};

/// Bit-level entry point. Codes must fit in `width` bits; duplicates are
/// ignored. Returns cubes ordered like Cover::patterns.
std::vector<Cube> minimize_codes(std::span<const std::uint32_t> codes, int width);

/// String entry point; every string must have length `width`.
Cover minimize(std::span<const std::string> cells, int width);

/// Prime implicants of the set (unordered), exposed for testing.
std::vector<Cube> prime_implicants(std::span<const std::uint32_t> codes, int width);

/// All 2^(#wildcards) completions of p.
std::vector<std::string> expand_pattern(const Pattern& p);
std::vector<std::uint32_t> expand_cube(const Cube& c, int width);

CoverCost cover_cost(const Cover& c);
CoverCost cover_cost(std::span<const Cube> cubes, int width);

/// Non-wildcards and pairings of the minimized cover of `codes`.
CoverCost minimized_cost(std::span<const std::uint32_t> codes, int width);

/// Ordering used for covers and zone token sets: more wildcards first, then
/// lexicographic on the pattern string.
bool token_order(const Pattern& a, const Pattern& b);

// Espresso-compatible PLA, single output:
//   .i <w>
//   .o 1
//   <bits> 1      (one row per ON-set cube; '-' marks a wildcard)
//   .e
void write_pla(std::ostream& os, const Cover& c);
Cover read_pla(std::istream& is);

}  // namespace geofence::minimize
