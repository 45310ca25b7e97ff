#include "geofence/bilinear.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <mutex>
#include <sstream>

namespace geofence::bilinear {

namespace {

std::uint64_t lo64(u128 v) { return static_cast<std::uint64_t>(v); }
std::uint64_t hi64(u128 v) { return static_cast<std::uint64_t>(v >> 64); }

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e != 0) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

int bit_length(u128 v) {
  int n = 0;
  for (; v != 0; v >>= 1) ++n;
  return n;
}

// Per-thread counter block. Only the owning thread writes; readers sum.
struct alignas(64) CounterBlock {
  std::atomic<std::uint64_t> pairings{0};
  std::atomic<std::uint64_t> exponentiations{0};
  std::atomic<std::uint64_t> table_exponentiations{0};
  std::atomic<std::uint64_t> precomputations{0};
};

struct CounterRegistry {
  std::mutex mu;
  std::vector<std::unique_ptr<CounterBlock>> blocks;

  CounterBlock* make() {
    std::lock_guard lock(mu);
    blocks.push_back(std::make_unique<CounterBlock>());
    return blocks.back().get();
  }
};

CounterRegistry& registry() {
  static CounterRegistry r;
  return r;
}

CounterBlock& local_block() {
  thread_local CounterBlock* block = registry().make();
  return *block;
}

void bump(std::atomic<std::uint64_t>& c) {
  c.store(c.load(std::memory_order_relaxed) + 1, std::memory_order_relaxed);
}

ParamsPtr gen_params_impl(int bits, std::uint64_t seed) {
  Rng rng(seed);
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  const std::uint64_t span = lo;  // [2^(bits-1), 2^bits)
  auto draw_prime = [&] {
    for (;;) {
      std::uint64_t c = lo + (rng() % span);
      if (is_prime(c)) return c;
    }
  };
  std::uint64_t p = draw_prime();
  std::uint64_t q = draw_prime();
  while (q == p) q = draw_prime();
  return GroupParams::from_primes(p, q);
}

}  // namespace

std::string to_decimal(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("parse_decimal: empty string");
  const u128 limit = ~u128{0};
  u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("parse_decimal: bad digit in '" + std::string(s) + "'");
    const unsigned d = static_cast<unsigned>(c - '0');
    if (v > (limit - d) / 10) throw std::out_of_range("parse_decimal: overflow");
    v = v * 10 + d;
  }
  return v;
}

u128 uniform_below(Rng& rng, u128 bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  if (bound == 1) return 0;
  const int nbits = bit_length(bound - 1);
  const u128 mask = nbits >= 128 ? ~u128{0} : ((u128{1} << nbits) - 1);
  for (;;) {
    u128 r = (static_cast<u128>(rng()) << 64) | rng();
    r &= mask;
    if (r < bound) return r;
  }
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for all n < 3.3e24.
  for (auto a : kSmall) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

GroupParams::GroupParams(std::uint64_t p, std::uint64_t q) : p_(p), q_(q) {
  n_ = static_cast<u128>(p) * q;
  bits_ = bit_length(p);
  n0_ = lo64(n_);
  n1_ = hi64(n_);
  // Newton iteration for N^{-1} mod 2^64; N is odd.
  std::uint64_t inv = n0_;
  for (int i = 0; i < 6; ++i) inv *= 2 - n0_ * inv;
  n_inv_ = 0 - inv;
  // R mod N with R = 2^128, then doubled 128 more times gives R^2 mod N.
  u128 r = (0 - n_) % n_;
  for (int i = 0; i < 128; ++i) r = add(r, r);
  r2_ = r;
}

std::shared_ptr<const GroupParams> GroupParams::from_primes(std::uint64_t p, std::uint64_t q) {
  if (!is_prime(p) || !is_prime(q)) throw std::invalid_argument("GroupParams: P and Q must be prime");
  if (p == q) throw std::invalid_argument("GroupParams: P and Q must be distinct");
  if (p == 2 || q == 2) throw std::invalid_argument("GroupParams: P and Q must be odd");
  if (bit_length(p) != bit_length(q)) throw std::invalid_argument("GroupParams: P and Q must have equal bit length");
  if (bit_length(p) > kMaxBits) throw std::invalid_argument("GroupParams: primes wider than 63 bits");
  return std::shared_ptr<const GroupParams>(new GroupParams(p, q));
}

// Two-limb CIOS Montgomery product: a * b * 2^-128 mod N.
u128 GroupParams::mont_mul(u128 a, u128 b) const {
  const std::uint64_t a0 = lo64(a), a1 = hi64(a);
  const std::uint64_t bw[2] = {lo64(b), hi64(b)};
  std::uint64_t t0 = 0, t1 = 0, t2 = 0;
  for (std::uint64_t bi : bw) {
    u128 acc = static_cast<u128>(a0) * bi + t0;
    t0 = lo64(acc);
    acc = static_cast<u128>(a1) * bi + t1 + hi64(acc);
    t1 = lo64(acc);
    acc = static_cast<u128>(t2) + hi64(acc);
    t2 = lo64(acc);
    const std::uint64_t t3 = hi64(acc);

    const std::uint64_t m = t0 * n_inv_;
    acc = static_cast<u128>(m) * n0_ + t0;
    acc = static_cast<u128>(m) * n1_ + t1 + hi64(acc);
    t0 = lo64(acc);
    acc = static_cast<u128>(t2) + hi64(acc);
    t1 = lo64(acc);
    t2 = t3 + hi64(acc);
  }
  u128 r = (static_cast<u128>(t1) << 64) | t0;
  if (t2 != 0 || r >= n_) r -= n_;
  return r;
}

u128 GroupParams::mul(u128 a, u128 b) const { return mont_mul(mont_mul(a, b), r2_); }

std::string GroupParams::to_string() const {
  std::ostringstream os;
  os << "N=" << to_decimal(n_) << " P=" << p_ << " Q=" << q_ << " bits=" << bits_;
  return os.str();
}

std::shared_ptr<const GroupParams> GroupParams::parse(std::string_view line) {
  std::istringstream is{std::string(line)};
  std::string tok;
  std::string n_str, p_str, q_str, bits_str;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("GroupParams::parse: bad token '" + tok + "'");
    auto key = tok.substr(0, eq);
    auto val = tok.substr(eq + 1);
    if (key == "N") n_str = val;
    else if (key == "P") p_str = val;
    else if (key == "Q") q_str = val;
    else if (key == "bits") bits_str = val;
    else throw std::invalid_argument("GroupParams::parse: unknown key '" + key + "'");
  }
  if (n_str.empty() || p_str.empty() || q_str.empty() || bits_str.empty())
    throw std::invalid_argument("GroupParams::parse: missing field");
  const u128 p = parse_decimal(p_str), q = parse_decimal(q_str);
  if (hi64(p) != 0 || hi64(q) != 0) throw std::invalid_argument("GroupParams::parse: prime too large");
  auto params = from_primes(lo64(p), lo64(q));
  if (params->n() != parse_decimal(n_str)) throw std::invalid_argument("GroupParams::parse: N != P*Q");
  if (params->bits() != std::stoi(bits_str)) throw std::invalid_argument("GroupParams::parse: bits mismatch");
  return params;
}

ParamsPtr gen_params(int bits, std::uint64_t seed) {
  if (bits < kMinBits || bits > kMaxBits)
    throw std::invalid_argument("gen_params: bits must be in [16, 63], got " + std::to_string(bits));
  return gen_params_impl(bits, seed);
}

ParamsPtr gen_toy_params(int bits, std::uint64_t seed) {
  if (bits < 3 || bits > kMaxBits)
    throw std::invalid_argument("gen_toy_params: bits must be in [3, 63], got " + std::to_string(bits));
  return gen_params_impl(bits, seed);
}

OpCounters counters() {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  OpCounters out;
  for (const auto& b : reg.blocks) {
    out.pairings += b->pairings.load(std::memory_order_relaxed);
    out.exponentiations += b->exponentiations.load(std::memory_order_relaxed);
    out.table_exponentiations += b->table_exponentiations.load(std::memory_order_relaxed);
    out.precomputations += b->precomputations.load(std::memory_order_relaxed);
  }
  return out;
}

void reset_counters() {
  auto& reg = registry();
  std::lock_guard lock(reg.mu);
  for (auto& b : reg.blocks) {
    b->pairings.store(0, std::memory_order_relaxed);
    b->exponentiations.store(0, std::memory_order_relaxed);
    b->table_exponentiations.store(0, std::memory_order_relaxed);
    b->precomputations.store(0, std::memory_order_relaxed);
  }
}

namespace detail {
void count_pairing() { bump(local_block().pairings); }
void count_exponentiation() { bump(local_block().exponentiations); }
void count_table_exponentiation() { bump(local_block().table_exponentiations); }
void count_precomputation() { bump(local_block().precomputations); }
}  // namespace detail

GTElem pair(const GElem& a, const GElem& b) {
  if (!a.same_group(b)) throw ParamsMismatch();
  const auto& gp = a.params();
  detail::count_pairing();
  return GTElem(gp, gp.mul(a.exponent(), b.exponent()));
}

GElem sample_gp(const GroupParams& params, Rng& rng) {
  const u128 r = 1 + uniform_below(rng, params.p() - 1);
  return GElem(params, params.mul(params.q(), r));
}

GElem sample_gq(const GroupParams& params, Rng& rng) {
  const u128 r = 1 + uniform_below(rng, params.q() - 1);
  return GElem(params, params.mul(params.p(), r));
}

u128 random_zn(const GroupParams& params, Rng& rng) { return uniform_below(rng, params.n()); }

u128 random_zp(const GroupParams& params, Rng& rng) { return uniform_below(rng, params.p()); }

}  // namespace geofence::bilinear
