#include "geofence/engine.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "geofence/minimize.hpp"

namespace geofence::engine {

ZoneTokenSet::ZoneTokenSet(std::string id, std::vector<hve::Token> tokens)
    : id_(std::move(id)), tokens_(std::move(tokens)) {
  std::stable_sort(tokens_.begin(), tokens_.end(), [](const hve::Token& a, const hve::Token& b) {
    return minimize::token_order(a.pattern, b.pattern);
  });
  for (const auto& t : tokens_) {
    if (t.width() != tokens_.front().width())
      throw hve::WidthMismatch("ZoneTokenSet", tokens_.front().width(), t.width());
    budget_ += pairing_cost(t.pattern);
  }
}

MatchResult match_user_zone(const hve::Ciphertext& c, const ZoneTokenSet& z, const std::string& user) {
  if (!z.tokens().empty() && c.width() != z.width()) throw hve::WidthMismatch("match_user_zone", z.width(), c.width());
  const auto t0 = std::chrono::steady_clock::now();
  MatchResult r;
  r.user = user;
  r.zone = z.id();
  for (const auto& t : z.tokens()) {
    r.pairings += pairing_cost(t.pattern);
    r.message = hve::query(t, c);
    if (r.message) break;
  }
  r.micros = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

namespace {

// Hands out contiguous index ranges on demand.
class TaskQueue {
 public:
  TaskQueue(std::size_t total, std::size_t batch) : total_(total), batch_(batch) {}

  bool next(std::size_t& begin, std::size_t& end) {
    std::lock_guard lock(mu_);
    if (next_ >= total_) return false;
    begin = next_;
    end = std::min(total_, next_ + batch_);
    next_ = end;
    return true;
  }

 private:
  std::mutex mu_;
  std::size_t next_ = 0;
  const std::size_t total_;
  const std::size_t batch_;
};

}  // namespace

std::vector<MatchResult> match_all(std::span<const UserCiphertext> cts, std::span<const ZoneTokenSet> zones,
                                   int workers) {
  if (workers < 1) throw std::invalid_argument("match_all: workers must be >= 1");
  const std::size_t nz = zones.size();
  const std::size_t total = cts.size() * nz;
  std::vector<MatchResult> out(total);
  if (total == 0) return out;

  const auto nw = static_cast<std::size_t>(workers);
  TaskQueue queue(total, std::max<std::size_t>(1, total / (nw * 16)));
  // Each task writes only its own slot, so results need no locking.
  auto work = [&] {
    std::size_t begin = 0, end = 0;
    while (queue.next(begin, end)) {
      for (std::size_t t = begin; t < end; ++t) {
        const auto& uc = cts[t / nz];
        out[t] = match_user_zone(uc.ct, zones[t % nz], uc.user);
      }
    }
  };

  if (nw == 1) {
    work();
    return out;
  }
  std::vector<std::jthread> pool;
  pool.reserve(nw);
  for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(work);
  pool.clear();
  return out;
}

bilinear::OpCounters instrument() { return bilinear::counters(); }

void reset_instrument() { bilinear::reset_counters(); }

void write_results_csv(std::ostream& os, std::span<const MatchResult> results, bool header) {
  if (header) os << "user,zone,outcome,pairings,micros\n";
  for (const auto& r : results) {
    os << r.user << ',' << r.zone << ',';
    if (r.message) os << "match:" << r.message->value;
    else os << "nonmatch";
    os << ',' << r.pairings << ',' << r.micros << '\n';
  }
}

}  // namespace geofence::engine
