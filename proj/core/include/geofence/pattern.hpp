#pragma once

// Index bit vectors and 0/1/* pattern vectors shared by the HVE scheme, the
// grid encodings, and the cube minimizer.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace geofence {

class IndexVector {
 public:
  IndexVector() = default;
  explicit IndexVector(std::vector<std::uint8_t> bits);

  /// Parses a string over {0,1}.
  static IndexVector from_string(std::string_view s);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::string to_string() const;

  auto operator<=>(const IndexVector&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

class Pattern {
 public:
  static constexpr char kWildcard = '*';

  Pattern() = default;
  /// Parses a string over {0,1,*}.
  explicit Pattern(std::string symbols);
  static Pattern from_string(std::string_view s) { return Pattern(std::string(s)); }
  static Pattern all_wildcards(std::size_t width) { return Pattern(std::string(width, kWildcard)); }

  std::size_t size() const { return symbols_.size(); }
  char operator[](std::size_t i) const { return symbols_[i]; }
  const std::string& str() const { return symbols_; }

  /// J: positions (0-based) whose symbol is not a wildcard, ascending.
  const std::vector<std::size_t>& fixed_positions() const { return fixed_; }
  std::size_t fixed_count() const { return fixed_.size(); }
  std::size_t wildcard_count() const { return symbols_.size() - fixed_.size(); }

  bool operator==(const Pattern& o) const { return symbols_ == o.symbols_; }
  std::strong_ordering operator<=>(const Pattern& o) const { return symbols_ <=> o.symbols_; }

 private:
  std::string symbols_;
  std::vector<std::size_t> fixed_;
};

/// True iff every non-wildcard position of p equals the index bit.
/// Throws std::invalid_argument on length mismatch.
bool plain_match(const IndexVector& index, const Pattern& p);

/// 1 + 2|J|: one pairing for e(C_0, K_0) plus two per fixed position.
std::size_t pairing_cost(const Pattern& p);

/// Bit-level cube over at most 32 variables. Bit (width-1-i) holds string
/// position i, so the leftmost symbol is the most significant bit.
struct Cube {
  std::uint32_t value = 0;  // fixed bits; zero under the wildcard mask
  std::uint32_t wild = 0;   // 1 where the position is a wildcard

  auto operator<=>(const Cube&) const = default;

  bool contains(std::uint32_t code) const { return (code & ~wild) == value; }
  int wildcard_count() const;

  Pattern to_pattern(int width) const;
  static Cube from_pattern(const Pattern& p);
};

std::string code_to_bits(std::uint32_t code, int width);
std::uint32_t bits_to_code(std::string_view bits);

}  // namespace geofence
