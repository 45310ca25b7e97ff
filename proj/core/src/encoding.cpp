#include "geofence/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace geofence::encoding {

namespace {

void require_pow2(const GridSpec& grid, const char* what) {
  if (!grid.power_of_two() || grid.d() < 2)
    throw std::invalid_argument(std::string(what) + ": grid side must be a power of two >= 2, got " +
                                std::to_string(grid.d()));
}

void require_in_grid(const GridSpec& grid, const CellId& c, const char* what) {
  if (c.x < 0 || c.y < 0 || c.x >= grid.d() || c.y >= grid.d())
    throw std::out_of_range(std::string(what) + ": cell (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                            ") outside a " + std::to_string(grid.d()) + "x" + std::to_string(grid.d()) + " grid");
}

}  // namespace

GridSpec::GridSpec(int d) : d_(d) {
  if (d < 1 || d > kMaxGrid) throw std::invalid_argument("GridSpec: d must be in [1, 1024], got " + std::to_string(d));
}

int GridSpec::log_d() const {
  if (!power_of_two()) throw std::invalid_argument("GridSpec: d is not a power of two");
  return std::countr_zero(static_cast<unsigned>(d_));
}

int GridSpec::side_at(int level) const {
  if (level < 0 || level > log_d()) throw std::out_of_range("GridSpec::side_at: bad level");
  return d_ >> level;
}

std::string_view to_string(Shape s) {
  switch (s) {
    case Shape::square: return "square";
    case Shape::rectangular: return "rect";
    case Shape::circular: return "circle";
    case Shape::freeform: return "freeform";
  }
  return "freeform";
}

std::string_view to_string(Encoding e) {
  switch (e) {
    case Encoding::baseline: return "baseline";
    case Encoding::hierarchical: return "hier";
    case Encoding::gray: return "gray";
  }
  return "gray";
}

Shape parse_shape(std::string_view s) {
  if (s == "square") return Shape::square;
  if (s == "rect" || s == "rectangular") return Shape::rectangular;
  if (s == "circle" || s == "circular") return Shape::circular;
  if (s == "freeform") return Shape::freeform;
  throw std::invalid_argument("unknown shape '" + std::string(s) + "'");
}

Encoding parse_encoding(std::string_view s) {
  if (s == "baseline") return Encoding::baseline;
  if (s == "hier" || s == "hierarchical") return Encoding::hierarchical;
  if (s == "gray") return Encoding::gray;
  throw std::invalid_argument("unknown encoding '" + std::string(s) + "'");
}

AlertZone::AlertZone(std::vector<CellId> cells, Shape shape) : cells_(std::move(cells)), shape_(shape) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
  for (const auto& c : cells_) {
    if (c.k != cells_.front().k) throw std::invalid_argument("AlertZone: cells at mixed levels");
  }
}

bool AlertZone::contains(const CellId& c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

void AlertZone::validate(const GridSpec& grid) const {
  if (cells_.empty()) throw std::invalid_argument("AlertZone: empty zone");
  const int side = level() == 0 ? grid.d() : grid.side_at(level());
  for (const auto& c : cells_) {
    if (c.x < 0 || c.y < 0 || c.x >= side || c.y >= side)
      throw std::out_of_range("AlertZone: cell (" + std::to_string(c.x) + "," + std::to_string(c.y) + ") out of bounds");
  }
}

CellId cell_of_point(const GridSpec& grid, double px, double py) {
  if (!(px >= 0.0 && px < 1.0 && py >= 0.0 && py < 1.0))
    throw std::out_of_range("cell_of_point: coordinates must lie in [0,1)");
  const int d = grid.d();
  const int x = std::min(d - 1, static_cast<int>(std::floor(px * d)));
  const int y = std::min(d - 1, static_cast<int>(std::floor(py * d)));
  return {x, y, 0};
}

std::int64_t baseline_position(const GridSpec& grid, const CellId& cell) {
  require_in_grid(grid, cell, "baseline_position");
  return static_cast<std::int64_t>(cell.y) * grid.d() + cell.x + 1;
}

IndexVector baseline_index(const GridSpec& grid, const CellId& cell) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(grid.cell_count()), 0);
  bits[static_cast<std::size_t>(baseline_position(grid, cell) - 1)] = 1;
  return IndexVector(std::move(bits));
}

Pattern baseline_token(const GridSpec& grid, const AlertZone& zone) {
  std::string s(static_cast<std::size_t>(grid.cell_count()), '0');
  for (const auto& c : zone.cells()) s[static_cast<std::size_t>(baseline_position(grid, c) - 1)] = Pattern::kWildcard;
  return Pattern(std::move(s));
}

std::size_t width(const GridSpec& grid, Encoding e) {
  if (e == Encoding::baseline) return static_cast<std::size_t>(grid.cell_count());
  require_pow2(grid, "width");
  return static_cast<std::size_t>(2 * grid.log_d());
}

std::uint32_t gray_code_value(int nbits, std::uint32_t n) {
  if (nbits < 0 || nbits > 31 || n >= (std::uint32_t{1} << nbits))
    throw std::out_of_range("gray_code: n out of range for nbits");
  return n ^ (n >> 1);
}

std::string gray_code(int nbits, std::uint32_t n) { return code_to_bits(gray_code_value(nbits, n), nbits); }

std::uint32_t gray_decode(std::uint32_t g) {
  std::uint32_t n = g;
  for (int shift = 1; shift < 32; shift <<= 1) n ^= n >> shift;
  return n;
}

std::uint32_t hier_code(const GridSpec& grid, const CellId& cell) {
  require_pow2(grid, "hier_id");
  require_in_grid(grid, cell, "hier_id");
  const int levels = grid.log_d();
  std::uint32_t code = 0;
  for (int b = levels - 1; b >= 0; --b) {
    const auto xb = static_cast<std::uint32_t>((cell.x >> b) & 1);
    const auto yb = static_cast<std::uint32_t>((cell.y >> b) & 1);
    code = (code << 2) | (xb << 1) | yb;
  }
  return code;
}

std::uint32_t gray_id_code(const GridSpec& grid, const CellId& cell) {
  require_pow2(grid, "gray_id");
  require_in_grid(grid, cell, "gray_id");
  const int n = grid.log_d();
  return (gray_code_value(n, static_cast<std::uint32_t>(cell.y)) << n) |
         gray_code_value(n, static_cast<std::uint32_t>(cell.x));
}

std::uint32_t cell_code(const GridSpec& grid, const CellId& cell, Encoding e) {
  switch (e) {
    case Encoding::hierarchical: return hier_code(grid, cell);
    case Encoding::gray: return gray_id_code(grid, cell);
    case Encoding::baseline: break;
  }
  throw std::invalid_argument("cell_code: baseline cells have no compact code");
}

std::string hier_id(const GridSpec& grid, const CellId& cell) {
  return code_to_bits(hier_code(grid, cell), 2 * grid.log_d());
}

std::string gray_id(const GridSpec& grid, const CellId& cell) {
  return code_to_bits(gray_id_code(grid, cell), 2 * grid.log_d());
}

CellId cell_from_hier_code(const GridSpec& grid, std::uint32_t code) {
  require_pow2(grid, "cell_from_hier_code");
  const int levels = grid.log_d();
  if (code >> (2 * levels) != 0) throw std::out_of_range("cell_from_hier_code: code too wide");
  CellId c;
  for (int b = levels - 1; b >= 0; --b) {
    const std::uint32_t pair = (code >> (2 * b)) & 3u;
    c.x = (c.x << 1) | static_cast<int>(pair >> 1);
    c.y = (c.y << 1) | static_cast<int>(pair & 1);
  }
  return c;
}

CellId cell_from_gray_code(const GridSpec& grid, std::uint32_t code) {
  require_pow2(grid, "cell_from_gray_code");
  const int n = grid.log_d();
  if (code >> (2 * n) != 0) throw std::out_of_range("cell_from_gray_code: code too wide");
  const std::uint32_t mask = (std::uint32_t{1} << n) - 1;
  return {static_cast<int>(gray_decode(code & mask)), static_cast<int>(gray_decode(code >> n)), 0};
}

CellId cell_from_code(const GridSpec& grid, std::uint32_t code, Encoding e) {
  switch (e) {
    case Encoding::hierarchical: return cell_from_hier_code(grid, code);
    case Encoding::gray: return cell_from_gray_code(grid, code);
    case Encoding::baseline: break;
  }
  throw std::invalid_argument("cell_from_code: baseline cells have no compact code");
}

IndexVector index_for(const GridSpec& grid, const CellId& cell, Encoding e) {
  if (e == Encoding::baseline) return baseline_index(grid, cell);
  return IndexVector::from_string(code_to_bits(cell_code(grid, cell, e), 2 * grid.log_d()));
}

std::vector<std::uint32_t> zone_to_codes(const GridSpec& grid, const AlertZone& zone, Encoding e) {
  std::vector<std::uint32_t> out;
  out.reserve(zone.size());
  for (const auto& c : zone.cells()) out.push_back(cell_code(grid, c, e));
  return out;
}

std::vector<std::string> zone_to_cellset(const GridSpec& grid, const AlertZone& zone, Encoding e) {
  const int w = static_cast<int>(width(grid, e));
  std::vector<std::string> out;
  out.reserve(zone.size());
  for (auto code : zone_to_codes(grid, zone, e)) out.push_back(code_to_bits(code, w));
  return out;
}

void write_zone(std::ostream& os, const GridSpec& grid, const AlertZone& zone) {
  os << "ZONE v1 d=" << grid.d() << " k=" << zone.level() << '\n';
  os << "# shape=" << to_string(zone.shape()) << '\n';
  for (const auto& c : zone.cells()) os << "cell=" << c.x << ',' << c.y << '\n';
}

ZoneFile read_zone(std::istream& is) {
  std::string line;
  auto next = [&](bool required) -> bool {
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    if (required) throw std::runtime_error("read_zone: unexpected end of input");
    return false;
  };
  next(true);
  std::istringstream hs(line);
  std::string magic, ver, d_tok, k_tok;
  hs >> magic >> ver >> d_tok >> k_tok;
  if (magic != "ZONE" || ver != "v1" || d_tok.rfind("d=", 0) != 0 || k_tok.rfind("k=", 0) != 0)
    throw std::runtime_error("read_zone: bad header '" + line + "'");
  ZoneFile zf;
  zf.d = std::stoi(d_tok.substr(2));
  const int k = std::stoi(k_tok.substr(2));
  Shape shape = Shape::freeform;
  std::vector<CellId> cells;
  while (next(false)) {
    if (line[0] == '#') {
      const auto pos = line.find("shape=");
      if (pos != std::string::npos) shape = parse_shape(line.substr(pos + 6));
      continue;
    }
    if (line.rfind("cell=", 0) != 0) throw std::runtime_error("read_zone: bad line '" + line + "'");
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("read_zone: bad cell '" + line + "'");
    cells.push_back({std::stoi(line.substr(5, comma - 5)), std::stoi(line.substr(comma + 1)), k});
  }
  zf.zone = AlertZone(std::move(cells), shape);
  zf.zone.validate(GridSpec(zf.d));
  return zf;
}

}  // namespace geofence::encoding
