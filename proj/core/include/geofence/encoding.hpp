#pragma once

// Grid addressing and the three cell encodings.
//
//   baseline      width d^2, one-hot index, token '*' on every zone cell
//   hierarchical  width 2 log2 d, quadtree quadrant bits, coarse level first;
//                 each level contributes (horizontal, vertical) with
//                 left/top = 0 and right/bottom = 1
//   gray          width 2 log2 d, reflected Gray code of y followed by x
//
// Rows grow downward: y = 0 is the top row. Baseline cell numbers run
// row-major from 1 at the top-left corner.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geofence/pattern.hpp"

namespace geofence::encoding {

inline constexpr int kMaxGrid = 1024;

class GridSpec {
 public:
  /// Any 1 <= d <= 1024 is accepted; the hierarchical and Gray encodings
  /// additionally require d to be a power of two >= 2.
  explicit GridSpec(int d);

  int d() const { return d_; }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(d_) * d_; }
  bool power_of_two() const { return (d_ & (d_ - 1)) == 0; }
  /// log2 d; throws unless power_of_two().
  int log_d() const;
  /// Number of hierarchy levels, 1 + log2 d.
  int level_count() const { return 1 + log_d(); }
  /// Grid side at hierarchy level k, d / 2^k.
  int side_at(int level) const;

  bool operator==(const GridSpec&) const = default;

 private:
  int d_;
};

struct CellId {
  int x = 0;
  int y = 0;
  int k = 0;  // hierarchy level, 0 = base

  auto operator<=>(const CellId&) const = default;
};

enum class Shape { square, rectangular, circular, freeform };

enum class Encoding { baseline, hierarchical, gray };

std::string_view to_string(Shape s);
std::string_view to_string(Encoding e);
Shape parse_shape(std::string_view s);
Encoding parse_encoding(std::string_view s);

/// A set of cells at a common level, kept sorted and duplicate-free.
class AlertZone {
 public:
  AlertZone() = default;
  AlertZone(std::vector<CellId> cells, Shape shape = Shape::freeform);

  const std::vector<CellId>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  int level() const { return cells_.empty() ? 0 : cells_.front().k; }
  Shape shape() const { return shape_; }
  bool contains(const CellId& c) const;

  /// Throws unless every cell lies inside `grid` at the zone's level.
  void validate(const GridSpec& grid) const;

  bool operator==(const AlertZone& o) const { return cells_ == o.cells_; }

 private:
  std::vector<CellId> cells_;
  Shape shape_ = Shape::freeform;
};

CellId cell_of_point(const GridSpec& grid, double px, double py);

/// 1-based row-major baseline position of a level-0 cell.
std::int64_t baseline_position(const GridSpec& grid, const CellId& cell);
IndexVector baseline_index(const GridSpec& grid, const CellId& cell);
Pattern baseline_token(const GridSpec& grid, const AlertZone& zone);

/// HVE width of an encoding on this grid.
std::size_t width(const GridSpec& grid, Encoding e);

/// Reflected Gray code of n on nbits bits (n ^ (n >> 1)).
std::uint32_t gray_code_value(int nbits, std::uint32_t n);
std::string gray_code(int nbits, std::uint32_t n);
std::uint32_t gray_decode(std::uint32_t g);

// Integer forms of the identifiers; the leftmost string symbol is the most
// significant bit.
std::uint32_t hier_code(const GridSpec& grid, const CellId& cell);
std::uint32_t gray_id_code(const GridSpec& grid, const CellId& cell);
std::uint32_t cell_code(const GridSpec& grid, const CellId& cell, Encoding e);

std::string hier_id(const GridSpec& grid, const CellId& cell);
std::string gray_id(const GridSpec& grid, const CellId& cell);

CellId cell_from_hier_code(const GridSpec& grid, std::uint32_t code);
CellId cell_from_gray_code(const GridSpec& grid, std::uint32_t code);
CellId cell_from_code(const GridSpec& grid, std::uint32_t code, Encoding e);

/// HVE index of a level-0 cell under any encoding.
IndexVector index_for(const GridSpec& grid, const CellId& cell, Encoding e);

/// One identifier per zone cell (hierarchical or Gray only).
std::vector<std::string> zone_to_cellset(const GridSpec& grid, const AlertZone& zone, Encoding e);
std::vector<std::uint32_t> zone_to_codes(const GridSpec& grid, const AlertZone& zone, Encoding e);

// Zone file:
//   ZONE v1 d=<int> k=<int>
//   # shape=<name>        (optional)
//   cell=<x>,<y>
struct ZoneFile {
  int d = 0;
  AlertZone zone;
};

void write_zone(std::ostream& os, const GridSpec& grid, const AlertZone& zone);
ZoneFile read_zone(std::istream& is);

}  // namespace geofence::encoding
