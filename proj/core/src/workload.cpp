#include "geofence/workload.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace geofence::workload {

namespace {

constexpr double kAlphaSteps[] = {0.0, 0.02, 0.04, 0.06, 0.08, 0.10};

double circle_radius(int area) { return std::sqrt(static_cast<double>(area) / std::numbers::pi); }

int place(double center, int extent, int d) {
  const int x0 = static_cast<int>(std::lround(center - extent / 2.0));
  return std::clamp(x0, 0, d - extent);
}

}  // namespace

std::string_view to_string(Distribution d) { return d == Distribution::uniform ? "uniform" : "gaussian"; }

Distribution parse_distribution(std::string_view s) {
  if (s == "uniform") return Distribution::uniform;
  if (s == "gaussian") return Distribution::gaussian;
  throw ConfigError("unknown distribution '" + std::string(s) + "'");
}

void BenchConfig::validate() const {
  if (d < 2 || d > encoding::kMaxGrid || (d & (d - 1)) != 0)
    throw ConfigError("grid side must be a power of two in [2, 1024], got " + std::to_string(d));
  if (!(coverage >= 0.01 - 1e-12 && coverage <= 0.10 + 1e-12))
    throw ConfigError("coverage must be in [0.01, 0.10]");
  const bool alpha_ok =
      std::any_of(std::begin(kAlphaSteps), std::end(kAlphaSteps), [&](double a) { return std::abs(a - alpha) < 1e-9; });
  if (!alpha_ok) throw ConfigError("alpha must be one of 0, 0.02, 0.04, 0.06, 0.08, 0.10");
  if (shape == Shape::freeform) throw ConfigError("shape must be square, rect, or circle");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (bits < bilinear::kMinBits || bits > bilinear::kMaxBits)
    throw ConfigError("bits must be in [" + std::to_string(bilinear::kMinBits) + ", " +
                      std::to_string(bilinear::kMaxBits) + "]");
  if (zones < 1) throw ConfigError("zone count must be >= 1");
  if (users < 0) throw ConfigError("user count must be >= 0");
}

int BenchConfig::zone_area() const {
  const double target = std::ceil(coverage * d * d - 1e-9);
  return std::max(1, static_cast<int>(std::ceil(target / zones - 1e-9)));
}

std::pair<int, int> zone_extent(Shape shape, int area, bool rotate) {
  area = std::max(area, 1);
  switch (shape) {
    case Shape::square: {
      const int s = std::max(1, static_cast<int>(std::lround(std::sqrt(area))));
      return {s, s};
    }
    case Shape::rectangular: {
      const int lng = std::max(1, static_cast<int>(std::lround(std::sqrt(area * kRectSkew))));
      const int sht = std::max(1, static_cast<int>(std::lround(std::sqrt(area / kRectSkew))));
      return rotate ? std::pair{sht, lng} : std::pair{lng, sht};
    }
    case Shape::circular: {
      const int s = std::max(1, 2 * static_cast<int>(std::ceil(circle_radius(area))));
      return {s, s};
    }
    case Shape::freeform: break;
  }
  throw ConfigError("freeform zones cannot be generated");
}

AlertZone make_zone(Shape shape, int area, int x0, int y0, bool rotate) {
  const auto [w, h] = zone_extent(shape, area, rotate);
  std::vector<encoding::CellId> cells;
  if (shape == Shape::circular) {
    const double r = circle_radius(std::max(area, 1));
    const double cx = x0 + w / 2.0, cy = y0 + h / 2.0;
    for (int y = y0; y < y0 + h; ++y) {
      for (int x = x0; x < x0 + w; ++x) {
        const double dx = x + 0.5 - cx, dy = y + 0.5 - cy;
        if (dx * dx + dy * dy <= r * r) cells.push_back({x, y, 0});
      }
    }
    if (cells.empty()) cells.push_back({x0 + w / 2, y0 + h / 2, 0});
  } else {
    for (int y = y0; y < y0 + h; ++y)
      for (int x = x0; x < x0 + w; ++x) cells.push_back({x, y, 0});
  }
  return AlertZone(std::move(cells), shape);
}

std::vector<AlertZone> gen_zones(const BenchConfig& cfg, bilinear::Rng& rng) {
  cfg.validate();
  const int d = cfg.d;
  const auto target = static_cast<long>(std::ceil(cfg.coverage * d * d - 1e-9));
  const int area = cfg.zone_area();
  {
    const auto [w, h] = zone_extent(cfg.shape, area);
    if (std::max(w, h) > d) throw ConfigError("zone of area " + std::to_string(area) + " does not fit the grid");
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(d / 2.0, cfg.sigma());
  std::bernoulli_distribution coin(0.5);

  std::vector<AlertZone> zones;
  std::set<encoding::CellId> covered;
  constexpr int kMaxMisses = 64;
  int misses = 0;
  while (static_cast<long>(covered.size()) < target && misses < kMaxMisses) {
    const bool rotate = cfg.shape == Shape::rectangular && coin(rng);
    const auto [w, h] = zone_extent(cfg.shape, area, rotate);
    double cx = 0, cy = 0;
    if (cfg.dist == Distribution::uniform) {
      cx = w / 2.0 + unit(rng) * (d - w);
      cy = h / 2.0 + unit(rng) * (d - h);
    } else {
      cx = normal(rng);
      cy = normal(rng);
    }
    AlertZone z = make_zone(cfg.shape, area, place(cx, w, d), place(cy, h, d), rotate);

    long grown = static_cast<long>(covered.size());
    for (const auto& c : z.cells()) grown += covered.contains(c) ? 0 : 1;
    const long before_gap = std::labs(target - static_cast<long>(covered.size()));
    const long after_gap = std::labs(target - grown);
    if (after_gap < before_gap) {
      covered.insert(z.cells().begin(), z.cells().end());
      zones.push_back(std::move(z));
      misses = 0;
    } else if (grown > target) {
      break;  // any further zone only overshoots
    } else {
      ++misses;  // fully overlapped an existing zone
    }
  }
  return zones;
}

std::vector<User> gen_users(int n, bilinear::Rng& rng) {
  std::vector<User> out;
  if (n <= 0) return out;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = unit(rng);
    const double y = unit(rng);
    out.push_back({static_cast<std::uint32_t>(i), x, y});
  }
  return out;
}

void random_walk(std::vector<User>& users, int d, bilinear::Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> length(0.0, 1.0 / d);
  const double top = std::nextafter(1.0, 0.0);
  for (auto& u : users) {
    const double a = angle(rng), r = length(rng);
    u.x = std::clamp(u.x + r * std::cos(a), 0.0, top);
    u.y = std::clamp(u.y + r * std::sin(a), 0.0, top);
  }
}

}  // namespace geofence::workload
