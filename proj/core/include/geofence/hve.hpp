#pragma once

// Hidden Vector Encryption over a composite-order bilinear group.
//
//   setup      -> (PublicKey, SecretKey) for width l
//   encrypt    -> Ciphertext of (index bits I, message M) under PK
//   gen_token  -> Token for a 0/1/* pattern under SK
//   query      -> M when the pattern matches I, otherwise nullopt (⊥)
//
// Query cost is exactly pairing_cost(pattern) = 1 + 2|J| pairings.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include "geofence/bilinear.hpp"
#include "geofence/pattern.hpp"

namespace geofence::hve {

using bilinear::GElem;
using bilinear::GTElem;
using bilinear::ParamsPtr;
using bilinear::Rng;
using bilinear::u128;

class WidthMismatch : public std::invalid_argument {
 public:
  WidthMismatch(const char* where, std::size_t expected, std::size_t got);
};

/// Plaintext payload. Valid messages are G_T exponents below 2^32; any
/// recovered exponent outside that range decodes to ⊥.
struct Message {
  std::uint32_t value = 0;

  GTElem encode(const bilinear::GroupParams& params) const { return GTElem(params, value); }
  static std::optional<Message> decode(const GTElem& m);

  auto operator<=>(const Message&) const = default;
};

/// Fixed-base tables for every exponentiation base encryption uses.
struct PublicKeyTables {
  bilinear::GTPowerTable a;
  bilinear::GPowerTable v;
  std::vector<bilinear::GPowerTable> h;   // H_i
  std::vector<bilinear::GPowerTable> uh;  // U_i * H_i
  std::vector<bilinear::GPowerTable> w;   // W_i
};

struct SecretKeyTables {
  GElem g_a;  // g^a, constant per key
  bilinear::GPowerTable v;
  std::vector<bilinear::GPowerTable> h;   // h_i
  std::vector<bilinear::GPowerTable> uh;  // u_i * h_i
  std::vector<bilinear::GPowerTable> w;   // w_i
};

struct PublicKey {
  ParamsPtr params;
  GElem g_q;
  GElem V;
  GTElem A;
  std::vector<GElem> U, H, W;
  std::shared_ptr<const PublicKeyTables> tables;  // null unless precompute() ran

  std::size_t width() const { return U.size(); }
};

struct SecretKey {
  ParamsPtr params;
  GElem g_q;
  u128 a = 0;  // in Z_P
  GElem g, v;
  std::vector<GElem> u, h, w;
  std::shared_ptr<const SecretKeyTables> tables;

  std::size_t width() const { return u.size(); }
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Ciphertext {
  GTElem c_prime;
  GElem c0;
  std::vector<GElem> c1, c2;  // C_{i,1}, C_{i,2} for i in [0, l)

  std::size_t width() const { return c1.size(); }
};

struct Token {
  Pattern pattern;
  GElem k0;
  std::vector<GElem> k1, k2;  // aligned with pattern.fixed_positions()

  std::size_t width() const { return pattern.size(); }
  /// Group elements carried: 1 + 2|J|.
  std::size_t element_count() const { return 1 + k1.size() + k2.size(); }
};

KeyPair setup(std::size_t width, ParamsPtr params, Rng& rng);

/// Builds fixed-base tables for PK (V, A, H_i, U_i H_i, W_i).
void precompute(PublicKey& pk);
/// Builds fixed-base tables for SK (v, h_i, u_i h_i, w_i).
void precompute(SecretKey& sk);

Ciphertext encrypt(const PublicKey& pk, const IndexVector& index, Message m, Rng& rng);

Token gen_token(const SecretKey& sk, const Pattern& pattern, Rng& rng);

/// C' / ( e(C_0, K_0) / prod_{i in J} e(C_{i,1}, K_{i,1}) e(C_{i,2}, K_{i,2}) ).
std::optional<Message> query(const Token& token, const Ciphertext& ct);

// Line-oriented text formats; elements are decimal exponents.
//   HVETOK v1 l=<int> J=<comma-list of 1-based positions>
//   pattern=<01*>
//   K0=<dec>
//   K<i>,1=<dec>
//   K<i>,2=<dec>
// Ciphertexts use header `HVECTX v1 l=<int>` then Cprime=, C0=, C<i>,1=, C<i>,2=.
// Keys use `HVEPK v1 l=<int>` / `HVESK v1 l=<int>` followed by a params= line.
void write_token(std::ostream& os, const Token& t);
Token read_token(std::istream& is, const ParamsPtr& params);
void write_ciphertext(std::ostream& os, const Ciphertext& c);
Ciphertext read_ciphertext(std::istream& is, const ParamsPtr& params);
void write_public_key(std::ostream& os, const PublicKey& pk);
PublicKey read_public_key(std::istream& is);
void write_secret_key(std::ostream& os, const SecretKey& sk);
SecretKey read_secret_key(std::istream& is);

/// Reads every record in a stream of concatenated token / ciphertext records.
std::vector<Token> read_tokens(std::istream& is, const ParamsPtr& params);
std::vector<Ciphertext> read_ciphertexts(std::istream& is, const ParamsPtr& params);

}  // namespace geofence::hve
