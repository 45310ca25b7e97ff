#pragma once

// Composite-order symmetric bilinear group, exponent-space reference backend.
//
// Every element of G and G_T is stored as its discrete logarithm with respect
// to an implicit generator, so the group law is addition mod N and the pairing
// is multiplication mod N. Bilinearity and the G_p / G_q orthogonality hold
// exactly, which is all HVE correctness needs.
//
// THIS BACKEND IS NOT SECURE. Anyone holding an element holds its discrete
// log. It exists to test and benchmark the HVE pipeline functionally; a real
// pairing backend would replace this header behind the same free functions.

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geofence::bilinear {

using u128 = unsigned __int128;
using Rng = std::mt19937_64;

class ParamsMismatch : public std::logic_error {
 public:
  ParamsMismatch() : std::logic_error("bilinear: operands belong to different group parameters") {}
};

std::string to_decimal(u128 v);
u128 parse_decimal(std::string_view s);

/// Uniform draw in [0, bound). bound must be non-zero.
u128 uniform_below(Rng& rng, u128 bound);

bool is_prime(std::uint64_t n);

/// Group parameters N = P * Q. Immutable; shared between keys, tokens and
/// ciphertexts through ParamsPtr. Elements keep a raw pointer back to their
/// parameters, so a ParamsPtr must outlive every element created from it.
class GroupParams {
 public:
  static std::shared_ptr<const GroupParams> from_primes(std::uint64_t p, std::uint64_t q);

  u128 n() const { return n_; }
  std::uint64_t p() const { return p_; }
  std::uint64_t q() const { return q_; }
  int bits() const { return bits_; }

  u128 add(u128 a, u128 b) const {
    u128 s = a + b;  // a, b < N < 2^126, no overflow
    return s >= n_ ? s - n_ : s;
  }
  u128 sub(u128 a, u128 b) const { return a >= b ? a - b : a + (n_ - b); }
  u128 neg(u128 a) const { return a == 0 ? 0 : n_ - a; }
  u128 mul(u128 a, u128 b) const;
  u128 reduce(u128 a) const { return a % n_; }

  /// `N=<dec> P=<dec> Q=<dec> bits=<int>`
  std::string to_string() const;
  static std::shared_ptr<const GroupParams> parse(std::string_view line);

  bool operator==(const GroupParams& o) const { return n_ == o.n_; }

 private:
  GroupParams(std::uint64_t p, std::uint64_t q);
  u128 mont_mul(u128 a, u128 b) const;

  u128 n_ = 0;
  std::uint64_t p_ = 0;
  std::uint64_t q_ = 0;
  int bits_ = 0;
  std::uint64_t n0_ = 0, n1_ = 0;
  std::uint64_t n_inv_ = 0;  // -N^{-1} mod 2^64
  u128 r2_ = 0;              // 2^256 mod N
};

using ParamsPtr = std::shared_ptr<const GroupParams>;

inline constexpr int kDefaultBits = 62;
inline constexpr int kMinBits = 16;
inline constexpr int kMaxBits = 63;

/// Two distinct primes of exactly `bits` bits, deterministic in `seed`.
/// Rejects bits outside [16, 63].
ParamsPtr gen_params(int bits = kDefaultBits, std::uint64_t seed = 0);

/// Same as gen_params but admits 3..15-bit primes, for exhaustive tests over
/// tiny groups. Such groups give no meaningful non-match detection.
ParamsPtr gen_toy_params(int bits, std::uint64_t seed);

namespace detail {
struct GTag {};
struct GTTag {};
}  // namespace detail

template <class Tag>
class Element {
 public:
  Element() = default;
  Element(const GroupParams& params, u128 e) : e_(params.reduce(e)), params_(&params) {}

  static Element identity(const GroupParams& params) { return Element(params, 0); }

  u128 exponent() const { return e_; }
  const GroupParams& params() const {
    if (params_ == nullptr) throw std::logic_error("bilinear: use of default-constructed element");
    return *params_;
  }
  bool is_identity() const { return e_ == 0; }

  bool operator==(const Element& o) const { return e_ == o.e_ && same_group(o); }

  bool same_group(const Element& o) const {
    return params_ == o.params_ || (params_ && o.params_ && *params_ == *o.params_);
  }

 private:
  u128 e_ = 0;
  const GroupParams* params_ = nullptr;
};

using GElem = Element<detail::GTag>;
using GTElem = Element<detail::GTTag>;

/// Per-thread operation counters, summed over every thread that has run
/// bilinear operations since the last reset.
struct OpCounters {
  std::uint64_t pairings = 0;
  std::uint64_t exponentiations = 0;        // naive pow, i.e. table misses
  std::uint64_t table_exponentiations = 0;  // pow_pre hits
  std::uint64_t precomputations = 0;        // power tables built

  bool operator==(const OpCounters&) const = default;
};

OpCounters counters();
/// Zeroes all counters. Call while no other thread is running operations.
void reset_counters();

namespace detail {
void count_pairing();
void count_exponentiation();
void count_table_exponentiation();
void count_precomputation();

template <class Tag>
const GroupParams& common(const Element<Tag>& a, const Element<Tag>& b) {
  if (!a.same_group(b)) throw ParamsMismatch();
  return a.params();
}
}  // namespace detail

template <class Tag>
Element<Tag> mul(const Element<Tag>& a, const Element<Tag>& b) {
  const auto& gp = detail::common(a, b);
  return Element<Tag>(gp, gp.add(a.exponent(), b.exponent()));
}

template <class Tag>
Element<Tag> inverse(const Element<Tag>& a) {
  const auto& gp = a.params();
  return Element<Tag>(gp, gp.neg(a.exponent()));
}

template <class Tag>
Element<Tag> div(const Element<Tag>& a, const Element<Tag>& b) {
  return mul(a, inverse(b));
}

template <class Tag>
Element<Tag> pow(const Element<Tag>& a, u128 k) {
  const auto& gp = a.params();
  detail::count_exponentiation();
  return Element<Tag>(gp, gp.mul(a.exponent(), gp.reduce(k)));
}

GTElem pair(const GElem& a, const GElem& b);

/// Random non-identity element of G_p (exponent Q*r, r in [1, P-1]).
GElem sample_gp(const GroupParams& params, Rng& rng);
/// Random non-identity element of G_q (exponent P*r, r in [1, Q-1]).
GElem sample_gq(const GroupParams& params, Rng& rng);

/// Uniform exponent in Z_N.
u128 random_zn(const GroupParams& params, Rng& rng);
/// Uniform exponent in Z_P.
u128 random_zp(const GroupParams& params, Rng& rng);

inline constexpr int kWindowBits = 4;

/// Fixed-base table: rows[i][j] = base^(j * 2^(4i)). pow_pre walks the
/// exponent one 4-bit window at a time and multiplies the matching rows.
template <class Tag>
class PowerTable {
 public:
  PowerTable() = default;

  explicit PowerTable(const Element<Tag>& base) : base_(base) {
    const auto& gp = base.params();
    int nbits = 0;
    for (u128 n = gp.n(); n != 0; n >>= 1) ++nbits;
    rows_.resize(static_cast<std::size_t>((nbits + kWindowBits - 1) / kWindowBits));
    u128 step = base.exponent();
    for (auto& row : rows_) {
      row[0] = 0;
      for (std::size_t j = 1; j < row.size(); ++j) row[j] = gp.add(row[j - 1], step);
      // next window base = step^16
      u128 next = gp.add(row[row.size() - 1], step);
      step = next;
    }
    detail::count_precomputation();
  }

  const Element<Tag>& base() const { return base_; }
  std::size_t window_count() const { return rows_.size(); }

  Element<Tag> pow(u128 k) const {
    const auto& gp = base_.params();
    k = gp.reduce(k);
    u128 acc = 0;
    for (std::size_t i = 0; i < rows_.size() && k != 0; ++i) {
      acc = gp.add(acc, rows_[i][static_cast<std::size_t>(k & 0xF)]);
      k >>= kWindowBits;
    }
    detail::count_table_exponentiation();
    return Element<Tag>(gp, acc);
  }

 private:
  Element<Tag> base_;
  std::vector<std::array<u128, 1u << kWindowBits>> rows_;
};

using GPowerTable = PowerTable<detail::GTag>;
using GTPowerTable = PowerTable<detail::GTTag>;

template <class Tag>
PowerTable<Tag> precompute_base(const Element<Tag>& base) {
  return PowerTable<Tag>(base);
}

template <class Tag>
Element<Tag> pow_pre(const PowerTable<Tag>& table, u128 k) {
  return table.pow(k);
}

}  // namespace geofence::bilinear
