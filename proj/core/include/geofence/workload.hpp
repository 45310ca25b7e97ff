#pragma once

// Benchmark configuration and synthetic workloads: alert zones placed on the
// grid and user positions in the unit square.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geofence/bilinear.hpp"
#include "geofence/encoding.hpp"

namespace geofence::workload {

using encoding::AlertZone;
using encoding::Encoding;
using encoding::Shape;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Distribution { uniform, gaussian };

std::string_view to_string(Distribution d);
Distribution parse_distribution(std::string_view s);

/// Long side over short side of rectangular zones.
inline constexpr double kRectSkew = 2.5;

struct BenchConfig {
  int d = 64;
  Encoding encoding = Encoding::gray;
  double coverage = 0.04;  // fraction of the grid inside zones
  Distribution dist = Distribution::uniform;
  Shape shape = Shape::square;
  double alpha = 0.0;
  int workers = 1;
  std::uint64_t seed = 1;
  int bits = bilinear::kDefaultBits;
  int zones = 8;    // zone-count hint; sets the area of each zone
  int users = 100;

  /// Throws ConfigError on any out-of-range field.
  void validate() const;
  /// Target area of one zone, ceil(coverage d^2 / zones).
  int zone_area() const;
  /// Gaussian center spread per axis, d / 8.
  double sigma() const { return d / 8.0; }

  bool operator==(const BenchConfig&) const = default;
};

/// Zones of cfg.shape placed by cfg.dist until their union is as close as
/// possible to coverage d^2 cells. Throws ConfigError if one zone does not fit.
std::vector<AlertZone> gen_zones(const BenchConfig& cfg, bilinear::Rng& rng);

/// Single zone of the given shape and target area with its bounding box at
/// (x0, y0). Exposed for tests.
AlertZone make_zone(Shape shape, int area, int x0, int y0, bool rotate = false);
/// Bounding-box width and height of make_zone(shape, area, ...).
std::pair<int, int> zone_extent(Shape shape, int area, bool rotate = false);

struct User {
  std::uint32_t id = 0;
  double x = 0.0;
  double y = 0.0;
};

/// n users uniformly placed in [0,1)^2, ids 0..n-1.
std::vector<User> gen_users(int n, bilinear::Rng& rng);

/// Moves every user by a random step of length at most 1/d, staying in [0,1)^2.
void random_walk(std::vector<User>& users, int d, bilinear::Rng& rng);

}  // namespace geofence::workload
