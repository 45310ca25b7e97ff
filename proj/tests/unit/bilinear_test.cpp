#include <gtest/gtest.h>

#include <thread>

#include "geofence/bilinear.hpp"

namespace bl = geofence::bilinear;
using bl::u128;

namespace {

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

u128 mulmod_oracle(u128 a, u128 b, u128 n) {
  // Double-and-add; never overflows for n < 2^127.
  u128 r = 0;
  a %= n;
  while (b) {
    if (b & 1) r = (r + a) % n;
    a = (a + a) % n;
    b >>= 1;
  }
  return r;
}

}  // namespace

TEST(Primality, AgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(bl::is_prime(n), trial_division_prime(n)) << n;
  EXPECT_TRUE(bl::is_prime(4611686018427387847ull));   // 2^62 - 57
  EXPECT_FALSE(bl::is_prime(4611686018427387849ull));  // 3 * ...
  EXPECT_FALSE(bl::is_prime(3215031751ull));           // strong pseudoprime to bases 2,3,5,7
}

TEST(Decimal, RoundTrips) {
  bl::Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const u128 v = (static_cast<u128>(rng()) << 64) | rng();
    EXPECT_EQ(bl::parse_decimal(bl::to_decimal(v)), v);
  }
  EXPECT_EQ(bl::to_decimal(0), "0");
  EXPECT_THROW(bl::parse_decimal("12a"), std::invalid_argument);
  EXPECT_THROW(bl::parse_decimal(""), std::invalid_argument);
}

TEST(GroupParams, GenerationIsDeterministicAndSized) {
  for (int bits : {16, 32, 48, 62, 63}) {
    const auto a = bl::gen_params(bits, 9);
    const auto b = bl::gen_params(bits, 9);
    EXPECT_EQ(*a, *b);
    EXPECT_NE(a->p(), a->q());
    EXPECT_TRUE(trial_division_prime(a->p()) || bits > 40);
    EXPECT_TRUE(bl::is_prime(a->p()));
    EXPECT_TRUE(bl::is_prime(a->q()));
    EXPECT_EQ(64 - __builtin_clzll(a->p()), bits);
    EXPECT_EQ(64 - __builtin_clzll(a->q()), bits);
    EXPECT_EQ(a->n(), static_cast<u128>(a->p()) * a->q());
  }
  EXPECT_NE(*bl::gen_params(62, 1), *bl::gen_params(62, 2));
  EXPECT_THROW(bl::gen_params(15, 1), std::invalid_argument);
  EXPECT_THROW(bl::gen_params(64, 1), std::invalid_argument);
  EXPECT_NO_THROW(bl::gen_toy_params(5, 1));
}

TEST(GroupParams, TextRoundTrip) {
  const auto a = bl::gen_params(40, 3);
  const auto b = bl::GroupParams::parse(a->to_string());
  EXPECT_EQ(*a, *b);
  EXPECT_EQ(b->p(), a->p());
  EXPECT_EQ(b->bits(), 40);
}

TEST(GroupParams, MontgomeryMatchesSlowProduct) {
  for (int bits : {16, 33, 62, 63}) {
    const auto gp = bl::gen_params(bits, 11);
    bl::Rng rng(bits);
    for (int i = 0; i < 2000; ++i) {
      const u128 a = bl::uniform_below(rng, gp->n());
      const u128 b = bl::uniform_below(rng, gp->n());
      ASSERT_EQ(gp->mul(a, b), mulmod_oracle(a, b, gp->n()));
    }
    EXPECT_EQ(gp->mul(gp->n() - 1, gp->n() - 1), 1u);
    EXPECT_EQ(gp->mul(0, gp->n() - 1), 0u);
  }
}

TEST(Elements, GroupLaws) {
  const auto gp = bl::gen_params(62, 2);
  bl::Rng rng(2);
  const bl::GElem g(*gp, bl::random_zn(*gp, rng));
  const bl::GElem h(*gp, bl::random_zn(*gp, rng));
  EXPECT_EQ(bl::mul(g, bl::inverse(g)), bl::GElem::identity(*gp));
  EXPECT_EQ(bl::div(bl::mul(g, h), h), g);
  EXPECT_EQ(bl::pow(g, 0), bl::GElem::identity(*gp));
  EXPECT_EQ(bl::pow(g, 3), bl::mul(g, bl::mul(g, g)));
}

TEST(Elements, MixedParamsRejected) {
  const auto a = bl::gen_params(32, 1);
  const auto b = bl::gen_params(32, 2);
  EXPECT_THROW(bl::mul(bl::GElem(*a, 3), bl::GElem(*b, 3)), bl::ParamsMismatch);
  EXPECT_THROW(bl::pair(bl::GElem(*a, 3), bl::GElem(*b, 3)), bl::ParamsMismatch);
}

TEST(Pairing, BilinearAndSubgroupOrthogonal) {
  const auto gp = bl::gen_params(62, 4);
  bl::Rng rng(4);
  const bl::GElem g(*gp, bl::random_zn(*gp, rng));
  const bl::GElem h(*gp, bl::random_zn(*gp, rng));
  const u128 x = bl::random_zn(*gp, rng), y = bl::random_zn(*gp, rng);
  EXPECT_EQ(bl::pair(bl::pow(g, x), bl::pow(h, y)), bl::pow(bl::pair(g, h), gp->mul(x, y)));
  EXPECT_EQ(bl::pair(g, h), bl::pair(h, g));
  for (int i = 0; i < 100; ++i) {
    const auto p = bl::sample_gp(*gp, rng);
    const auto q = bl::sample_gq(*gp, rng);
    EXPECT_FALSE(p.is_identity());
    EXPECT_FALSE(q.is_identity());
    EXPECT_TRUE(bl::pair(p, q).is_identity());
  }
}

TEST(PowerTable, MatchesNaivePow) {
  const auto gp = bl::gen_params(62, 6);
  bl::Rng rng(6);
  const bl::GElem base(*gp, bl::random_zn(*gp, rng));
  const auto table = bl::precompute_base(base);
  for (int i = 0; i < 5000; ++i) {
    const u128 k = bl::random_zn(*gp, rng);
    ASSERT_EQ(bl::pow_pre(table, k), bl::pow(base, k));
  }
  EXPECT_EQ(bl::pow_pre(table, 0), bl::GElem::identity(*gp));
  EXPECT_EQ(bl::pow_pre(table, gp->n()), bl::GElem::identity(*gp));
  EXPECT_EQ(bl::pow_pre(table, gp->n() + 5), bl::pow(base, 5));
}

TEST(Counters, CountAndReset) {
  const auto gp = bl::gen_params(32, 8);
  const bl::GElem g(*gp, 12345);
  bl::reset_counters();
  EXPECT_EQ(bl::counters(), bl::OpCounters{});
  (void)bl::pair(g, g);
  (void)bl::pow(g, 7);
  const auto t = bl::precompute_base(g);
  (void)bl::pow_pre(t, 7);
  const auto c = bl::counters();
  EXPECT_EQ(c.pairings, 1u);
  EXPECT_EQ(c.exponentiations, 1u);
  EXPECT_EQ(c.table_exponentiations, 1u);
  EXPECT_EQ(c.precomputations, 1u);
  bl::reset_counters();
  EXPECT_EQ(bl::counters(), bl::OpCounters{});
}

TEST(Counters, SumAcrossThreads) {
  const auto gp = bl::gen_params(32, 8);
  const bl::GElem g(*gp, 99);
  bl::reset_counters();
  {
    std::vector<std::jthread> ts;
    for (int t = 0; t < 4; ++t)
      ts.emplace_back([&] {
        for (int i = 0; i < 250; ++i) (void)bl::pair(g, g);
      });
  }
  EXPECT_EQ(bl::counters().pairings, 1000u);
}
