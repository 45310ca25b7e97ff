#include "geofence/pattern.hpp"

#include <bit>
#include <stdexcept>

namespace geofence {

IndexVector::IndexVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("IndexVector: bits must be 0 or 1");
  }
}

IndexVector IndexVector::from_string(std::string_view s) {
  std::vector<std::uint8_t> bits;
  bits.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("IndexVector: invalid symbol '" + std::string(1, c) + "'");
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return IndexVector(std::move(bits));
}

std::string IndexVector::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

Pattern::Pattern(std::string symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char c = symbols_[i];
    if (c == kWildcard) continue;
    if (c != '0' && c != '1') throw std::invalid_argument("Pattern: invalid symbol '" + std::string(1, c) + "'");
    fixed_.push_back(i);
  }
}

bool plain_match(const IndexVector& index, const Pattern& p) {
  if (index.size() != p.size()) {
    throw std::invalid_argument("plain_match: index width " + std::to_string(index.size()) +
                                " != pattern width " + std::to_string(p.size()));
  }
  for (std::size_t i : p.fixed_positions()) {
    if (index[i] != static_cast<std::uint8_t>(p[i] - '0')) return false;
  }
  return true;
}

std::size_t pairing_cost(const Pattern& p) { return 1 + 2 * p.fixed_count(); }

int Cube::wildcard_count() const { return std::popcount(wild); }

Pattern Cube::to_pattern(int width) const {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << (width - 1 - i);
    if (wild & bit) s[static_cast<std::size_t>(i)] = Pattern::kWildcard;
    else if (value & bit) s[static_cast<std::size_t>(i)] = '1';
  }
  return Pattern(std::move(s));
}

Cube Cube::from_pattern(const Pattern& p) {
  if (p.size() > 32) throw std::invalid_argument("Cube: pattern wider than 32");
  const int width = static_cast<int>(p.size());
  Cube c;
  for (int i = 0; i < width; ++i) {
    const std::uint32_t bit = std::uint32_t{1} << (width - 1 - i);
    const char s = p[static_cast<std::size_t>(i)];
    if (s == Pattern::kWildcard) c.wild |= bit;
    else if (s == '1') c.value |= bit;
  }
  return c;
}

std::string code_to_bits(std::uint32_t code, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) {
    if (code & (std::uint32_t{1} << (width - 1 - i))) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

std::uint32_t bits_to_code(std::string_view bits) {
  if (bits.size() > 32) throw std::invalid_argument("bits_to_code: wider than 32");
  std::uint32_t code = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bits_to_code: invalid symbol");
    code = (code << 1) | static_cast<std::uint32_t>(c - '0');
  }
  return code;
}

}  // namespace geofence
