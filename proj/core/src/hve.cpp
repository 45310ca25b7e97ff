#include "geofence/hve.hpp"

#include <string>

namespace geofence::hve {

using bilinear::mul;
using bilinear::pair;
using bilinear::pow;
using bilinear::sample_gp;
using bilinear::sample_gq;

WidthMismatch::WidthMismatch(const char* where, std::size_t expected, std::size_t got)
    : std::invalid_argument(std::string(where) + ": width mismatch (expected " + std::to_string(expected) +
                            ", got " + std::to_string(got) + ")") {}

std::optional<Message> Message::decode(const GTElem& m) {
  const u128 e = m.exponent();
  if (e >> 32 != 0) return std::nullopt;
  return Message{static_cast<std::uint32_t>(e)};
}

KeyPair setup(std::size_t width, ParamsPtr params, Rng& rng) {
  if (width == 0) throw std::invalid_argument("hve::setup: width must be >= 1");
  if (!params) throw std::invalid_argument("hve::setup: null params");
  const auto& gp = *params;

  SecretKey sk;
  sk.params = params;
  sk.g_q = sample_gq(gp, rng);
  sk.a = bilinear::random_zp(gp, rng);
  sk.g = sample_gp(gp, rng);
  sk.v = sample_gp(gp, rng);
  sk.u.reserve(width);
  sk.h.reserve(width);
  sk.w.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    sk.u.push_back(sample_gp(gp, rng));
    sk.h.push_back(sample_gp(gp, rng));
    sk.w.push_back(sample_gp(gp, rng));
  }

  PublicKey pk;
  pk.params = params;
  pk.g_q = sk.g_q;
  pk.V = mul(sk.v, sample_gq(gp, rng));
  pk.A = pow(pair(sk.g, sk.v), sk.a);
  pk.U.reserve(width);
  pk.H.reserve(width);
  pk.W.reserve(width);
  for (std::size_t i = 0; i < width; ++i) {
    pk.U.push_back(mul(sk.u[i], sample_gq(gp, rng)));
    pk.H.push_back(mul(sk.h[i], sample_gq(gp, rng)));
    pk.W.push_back(mul(sk.w[i], sample_gq(gp, rng)));
  }
  return {std::move(pk), std::move(sk)};
}

void precompute(PublicKey& pk) {
  auto t = std::make_shared<PublicKeyTables>();
  t->a = bilinear::precompute_base(pk.A);
  t->v = bilinear::precompute_base(pk.V);
  const std::size_t l = pk.width();
  t->h.reserve(l);
  t->uh.reserve(l);
  t->w.reserve(l);
  for (std::size_t i = 0; i < l; ++i) {
    t->h.push_back(bilinear::precompute_base(pk.H[i]));
    t->uh.push_back(bilinear::precompute_base(mul(pk.U[i], pk.H[i])));
    t->w.push_back(bilinear::precompute_base(pk.W[i]));
  }
  pk.tables = std::move(t);
}

void precompute(SecretKey& sk) {
  auto t = std::make_shared<SecretKeyTables>();
  t->g_a = pow(sk.g, sk.a);
  t->v = bilinear::precompute_base(sk.v);
  const std::size_t l = sk.width();
  t->h.reserve(l);
  t->uh.reserve(l);
  t->w.reserve(l);
  for (std::size_t i = 0; i < l; ++i) {
    t->h.push_back(bilinear::precompute_base(sk.h[i]));
    t->uh.push_back(bilinear::precompute_base(mul(sk.u[i], sk.h[i])));
    t->w.push_back(bilinear::precompute_base(sk.w[i]));
  }
  sk.tables = std::move(t);
}

Ciphertext encrypt(const PublicKey& pk, const IndexVector& index, Message m, Rng& rng) {
  const std::size_t l = pk.width();
  if (index.size() != l) throw WidthMismatch("hve::encrypt", l, index.size());
  const auto& gp = *pk.params;
  const u128 s = bilinear::random_zn(gp, rng);
  const PublicKeyTables* t = pk.tables.get();

  Ciphertext c;
  c.c_prime = mul(m.encode(gp), t ? t->a.pow(s) : pow(pk.A, s));
  c.c0 = mul(t ? t->v.pow(s) : pow(pk.V, s), sample_gq(gp, rng));
  c.c1.reserve(l);
  c.c2.reserve(l);
  for (std::size_t i = 0; i < l; ++i) {
    GElem base_pow;
    if (t) {
      base_pow = index[i] ? t->uh[i].pow(s) : t->h[i].pow(s);
    } else {
      base_pow = pow(index[i] ? mul(pk.U[i], pk.H[i]) : pk.H[i], s);
    }
    c.c1.push_back(mul(base_pow, sample_gq(gp, rng)));
    c.c2.push_back(mul(t ? t->w[i].pow(s) : pow(pk.W[i], s), sample_gq(gp, rng)));
  }
  return c;
}

Token gen_token(const SecretKey& sk, const Pattern& pattern, Rng& rng) {
  const std::size_t l = sk.width();
  if (pattern.size() != l) throw WidthMismatch("hve::gen_token", l, pattern.size());
  const auto& gp = *sk.params;
  const SecretKeyTables* t = sk.tables.get();

  Token tk;
  tk.pattern = pattern;
  GElem k0 = t ? t->g_a : pow(sk.g, sk.a);
  const auto& fixed = pattern.fixed_positions();
  tk.k1.reserve(fixed.size());
  tk.k2.reserve(fixed.size());
  for (std::size_t i : fixed) {
    const u128 r1 = bilinear::random_zp(gp, rng);
    const u128 r2 = bilinear::random_zp(gp, rng);
    const bool one = pattern[i] == '1';
    if (t) {
      k0 = mul(k0, one ? t->uh[i].pow(r1) : t->h[i].pow(r1));
      k0 = mul(k0, t->w[i].pow(r2));
      tk.k1.push_back(t->v.pow(r1));
      tk.k2.push_back(t->v.pow(r2));
    } else {
      k0 = mul(k0, pow(one ? mul(sk.u[i], sk.h[i]) : sk.h[i], r1));
      k0 = mul(k0, pow(sk.w[i], r2));
      tk.k1.push_back(pow(sk.v, r1));
      tk.k2.push_back(pow(sk.v, r2));
    }
  }
  tk.k0 = k0;
  return tk;
}

std::optional<Message> query(const Token& token, const Ciphertext& ct) {
  if (token.width() != ct.width()) throw WidthMismatch("hve::query", token.width(), ct.width());
  const auto& fixed = token.pattern.fixed_positions();
  if (token.k1.size() != fixed.size() || token.k2.size() != fixed.size())
    throw std::invalid_argument("hve::query: token key material does not match its pattern");

  GTElem denom = pair(ct.c0, token.k0);
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    const std::size_t i = fixed[j];
    denom = bilinear::div(denom, pair(ct.c1[i], token.k1[j]));
    denom = bilinear::div(denom, pair(ct.c2[i], token.k2[j]));
  }
  return Message::decode(bilinear::div(ct.c_prime, denom));
}

}  // namespace geofence::hve
