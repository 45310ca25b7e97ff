#pragma once

// Server-side matching of encrypted user updates against zone token sets.
//
// The unit of work is one (ciphertext, zone) pair. Tokens of a zone are
// evaluated in token order and evaluation stops at the first match, so a
// matching user usually costs fewer pairings than the zone's full budget.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geofence/bilinear.hpp"
#include "geofence/hve.hpp"

namespace geofence::engine {

class ZoneTokenSet {
 public:
  ZoneTokenSet() = default;
  /// Sorts tokens by descending wildcard count, ties lexicographic.
  ZoneTokenSet(std::string id, std::vector<hve::Token> tokens);

  const std::string& id() const { return id_; }
  const std::vector<hve::Token>& tokens() const { return tokens_; }
  /// Sum of pairing_cost over all tokens.
  std::size_t pairing_budget() const { return budget_; }
  /// HVE width shared by all tokens; 0 for an empty set.
  std::size_t width() const { return tokens_.empty() ? 0 : tokens_.front().width(); }

 private:
  std::string id_;
  std::vector<hve::Token> tokens_;
  std::size_t budget_ = 0;
};

struct MatchResult {
  std::string user;
  std::string zone;
  std::optional<hve::Message> message;  // set on match
  std::size_t pairings = 0;
  std::int64_t micros = 0;

  bool matched() const { return message.has_value(); }
  /// Equality ignores the timing field.
  bool operator==(const MatchResult& o) const {
    return user == o.user && zone == o.zone && message == o.message && pairings == o.pairings;
  }
};

struct UserCiphertext {
  std::string user;
  hve::Ciphertext ct;
};

/// Throws hve::WidthMismatch if the ciphertext and token widths differ.
MatchResult match_user_zone(const hve::Ciphertext& c, const ZoneTokenSet& z, const std::string& user = {});

/// Evaluates every (ciphertext, zone) pair on `workers` threads pulling from
/// a shared task queue. Output is ordered by ciphertext, then zone, whatever
/// the worker count. Throws on workers < 1.
std::vector<MatchResult> match_all(std::span<const UserCiphertext> ciphertexts, std::span<const ZoneTokenSet> zones,
                                   int workers);

/// Operation counters for the current run.
bilinear::OpCounters instrument();
void reset_instrument();

/// `user,zone,outcome,pairings,micros`; outcome is `match:<message>` or
/// `nonmatch`.
void write_results_csv(std::ostream& os, std::span<const MatchResult> results, bool header = true);

}  // namespace geofence::engine
