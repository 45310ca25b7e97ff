// Acceptance checks: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "geofence/bench.hpp"
#include "geofence/bilinear.hpp"
#include "geofence/encoding.hpp"
#include "geofence/engine.hpp"
#include "geofence/expansion.hpp"
#include "geofence/hve.hpp"
#include "geofence/minimize.hpp"
#include "geofence/workload.hpp"

namespace {

using namespace geofence;
using encoding::AlertZone;
using encoding::CellId;
using encoding::Encoding;
using encoding::GridSpec;
using encoding::Shape;

struct Outcome {
  // skip: the check cannot be evaluated on this machine.
  enum Kind { pass, fail, skip } kind = fail;
  std::string detail;
};

Outcome ok(std::string d) { return {Outcome::pass, std::move(d)}; }
Outcome bad(std::string d) { return {Outcome::fail, std::move(d)}; }
Outcome skipped(std::string d) { return {Outcome::skip, std::move(d)}; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Reference matcher, written independently of plain_match.
bool oracle_match(const std::string& index, const std::string& pattern) {
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (pattern[i] != '*' && pattern[i] != index[i]) return false;
  }
  return true;
}

std::string bits_of(std::uint32_t v, int w) {
  std::string s(static_cast<std::size_t>(w), '0');
  for (int i = 0; i < w; ++i) s[static_cast<std::size_t>(w - 1 - i)] = ((v >> i) & 1) ? '1' : '0';
  return s;
}

std::string ternary_of(std::uint32_t v, int w) {
  std::string s(static_cast<std::size_t>(w), '0');
  for (int i = 0; i < w; ++i) {
    s[static_cast<std::size_t>(i)] = "01*"[v % 3];
    v /= 3;
  }
  return s;
}

// ---------------------------------------------------------------------------

Outcome hve_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  bilinear::Rng rng(101);
  const auto params = bilinear::gen_params(62, 101);
  std::uniform_int_distribution<std::uint32_t> msg;
  std::size_t cases = 0, mismatches = 0;

  auto check = [&](hve::KeyPair& keys, const std::string& index, const std::string& pattern) {
    const hve::Message m{msg(rng)};
    const auto ct = hve::encrypt(keys.pk, IndexVector::from_string(index), m, rng);
    const auto tok = hve::gen_token(keys.sk, Pattern(pattern), rng);
    const auto got = hve::query(tok, ct);
    const bool expect = oracle_match(index, pattern);
    ++cases;
    if (expect ? !(got && *got == m) : got.has_value()) ++mismatches;
  };

  for (int l : {2, 3, 4}) {
    auto keys = hve::setup(static_cast<std::size_t>(l), params, rng);
    const auto n3 = static_cast<std::uint32_t>(std::pow(3, l));
    for (std::uint32_t i = 0; i < (1u << l); ++i)
      for (std::uint32_t p = 0; p < n3; ++p) check(keys, bits_of(i, l), ternary_of(p, l));
  }
  for (int l : {8, 18, 20}) {
    auto keys = hve::setup(static_cast<std::size_t>(l), params, rng);
    hve::precompute(keys.pk);
    hve::precompute(keys.sk);
    std::bernoulli_distribution half(0.5), star(0.6);
    std::uniform_int_distribution<int> pos(0, l - 1);
    for (int c = 0; c < 10000; ++c) {
      std::string index(static_cast<std::size_t>(l), '0');
      for (auto& b : index) b = half(rng) ? '1' : '0';
      // Half the patterns agree with the index, half get one flipped literal.
      std::string pattern = index;
      for (auto& s : pattern) {
        if (star(rng)) s = '*';
      }
      if (half(rng)) {
        const auto i = static_cast<std::size_t>(pos(rng));
        pattern[i] = index[i] == '0' ? '1' : '0';
      }
      check(keys, index, pattern);
    }
  }
  const double secs = seconds_since(t0);
  const std::string d = fmt("%zu cases, %zu mismatches, %.1f s (limit 60 s)", cases, mismatches, secs);
  return mismatches == 0 && secs < 60.0 ? ok(d) : bad(d);
}

Outcome width_law() {
  for (int d : {16, 64, 256, 1024}) {
    const GridSpec g(d);
    const auto lg = static_cast<std::size_t>(std::countr_zero(static_cast<unsigned>(d)));
    const CellId c{d - 1, d / 3, 0};
    if (encoding::width(g, Encoding::baseline) != static_cast<std::size_t>(d) * d ||
        encoding::width(g, Encoding::hierarchical) != 2 * lg || encoding::width(g, Encoding::gray) != 2 * lg ||
        encoding::index_for(g, c, Encoding::baseline).size() != static_cast<std::size_t>(d) * d ||
        encoding::index_for(g, c, Encoding::hierarchical).size() != 2 * lg ||
        encoding::index_for(g, c, Encoding::gray).size() != 2 * lg)
      return bad(fmt("width law broken at d=%d", d));
  }
  return ok("d in {16,64,256,1024}: baseline d^2, hier/gray 2 log2 d");
}

Outcome fig3_baseline() {
  const GridSpec g(3);
  // Cells are numbered row-major from 1; cell n sits at ((n-1) % 3, (n-1) / 3).
  auto cell = [](int n) { return CellId{(n - 1) % 3, (n - 1) / 3, 0}; };
  const AlertZone zones({cell(3), cell(8), cell(9)});
  const Pattern tok = encoding::baseline_token(g, zones);
  const std::size_t cost = 1 + 2 * static_cast<std::size_t>(std::count(tok.str().begin(), tok.str().end(), '0') +
                                                           std::count(tok.str().begin(), tok.str().end(), '1'));

  bilinear::Rng rng(3);
  auto keys = hve::setup(9, bilinear::gen_params(62, 3), rng);
  const hve::Message m{42};
  const auto c1 = hve::encrypt(keys.pk, encoding::baseline_index(g, cell(1)), m, rng);
  const auto c2 = hve::encrypt(keys.pk, encoding::baseline_index(g, cell(8)), m, rng);
  const auto token = hve::gen_token(keys.sk, tok, rng);
  engine::reset_instrument();
  const auto r1 = hve::query(token, c1);
  const auto pairings = engine::instrument().pairings;
  const auto r2 = hve::query(token, c2);

  const bool pass = tok.str() == "00*0000**" && !r1 && r2 && *r2 == m && cost == 13 && pairing_cost(tok) == 13 &&
                    pairings == 13;
  return {pass ? Outcome::pass : Outcome::fail,
          fmt("token %s, u1 %s, u2 %s, pairing cost %zu, counted %llu", tok.str().c_str(), r1 ? "Match" : "NonMatch",
              r2 ? "Match" : "NonMatch", pairing_cost(tok), static_cast<unsigned long long>(pairings))};
}

Outcome fig5_hier() {
  const std::vector<std::string> cells = {"1000", "1001", "1010", "1011", "1110", "1111", "0010"};
  const auto cover = minimize::minimize(cells, 4);
  std::set<std::string> covered;
  std::size_t nw = 0;
  for (const auto& p : cover.patterns) {
    nw += std::count_if(p.str().begin(), p.str().end(), [](char c) { return c != '*'; });
    for (std::uint32_t v = 0; v < 16; ++v) {
      if (oracle_match(bits_of(v, 4), p.str())) covered.insert(bits_of(v, 4));
    }
  }
  const bool exact = covered == std::set<std::string>(cells.begin(), cells.end());
  std::string list;
  for (const auto& p : cover.patterns) list += (list.empty() ? "" : " ") + p.str();
  const std::string d = fmt("cover {%s}, %zu non-wildcards (limit 7), exact %s", list.c_str(), nw, exact ? "yes" : "no");
  return exact && nw <= 7 ? ok(d) : bad(d);
}

// Reflected Gray code built by prefixing 0 to G_{k-1} and 1 to its mirror.
std::vector<std::uint32_t> reflected(int n) {
  std::vector<std::uint32_t> g = {0};
  for (int k = 0; k < n; ++k) {
    const auto sz = g.size();
    for (std::size_t i = sz; i-- > 0;) g.push_back(g[i] | (1u << k));
  }
  return g;
}

Outcome gray_adjacency() {
  std::size_t pairs = 0;
  for (int d = 2; d <= 1024; d *= 2) {
    const GridSpec g(d);
    const int n = g.log_d();
    const auto ref = reflected(n);
    for (int i = 0; i < d; ++i) {
      if (encoding::gray_code_value(n, static_cast<std::uint32_t>(i)) != ref[static_cast<std::size_t>(i)])
        return bad(fmt("code of %d differs from the reflected construction at d=%d", i, d));
    }
    for (int i = 0; i + 1 < d; ++i) {
      const auto a = encoding::gray_id_code(g, {i, 0, 0}) ^ encoding::gray_id_code(g, {i + 1, 0, 0});
      const auto b = encoding::gray_id_code(g, {0, i, 0}) ^ encoding::gray_id_code(g, {0, i + 1, 0});
      if (std::popcount(a) != 1 || std::popcount(b) != 1) return bad(fmt("neighbors %d,%d at d=%d", i, i + 1, d));
      pairs += 2;
    }
  }
  return ok(fmt("%zu neighboring row/column pairs, all at Hamming distance 1", pairs));
}

Outcome minimizer_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  // Completions of a pattern string, enumerated by recursion over its stars.
  std::function<void(std::string&, std::size_t, std::set<std::uint32_t>&)> complete =
      [&](std::string& s, std::size_t i, std::set<std::uint32_t>& out) {
        if (i == s.size()) {
          out.insert(static_cast<std::uint32_t>(std::stoul(s, nullptr, 2)));
          return;
        }
        if (s[i] != '*') return complete(s, i + 1, out);
        for (char b : {'0', '1'}) {
          s[i] = b;
          complete(s, i + 1, out);
        }
        s[i] = '*';
      };
  auto exact = [&](const std::vector<std::uint32_t>& set, int w) {
    std::set<std::uint32_t> got;
    for (const auto& c : minimize::minimize_codes(set, w)) {
      std::string p = c.to_pattern(w).str();
      complete(p, 0, got);
    }
    return got == std::set<std::uint32_t>(set.begin(), set.end());
  };

  std::size_t failures = 0, cases = 0;
  for (std::uint32_t mask = 1; mask < (1u << 16); ++mask) {
    std::vector<std::uint32_t> set;
    for (std::uint32_t v = 0; v < 16; ++v) {
      if (mask >> v & 1) set.push_back(v);
    }
    failures += exact(set, 4) ? 0 : 1;
    ++cases;
  }
  bilinear::Rng rng(606);
  std::uniform_int_distribution<int> size(1, 256);
  std::uniform_int_distribution<std::uint32_t> code(0, 4095);
  for (int i = 0; i < 10000; ++i) {
    std::set<std::uint32_t> s;
    const int n = size(rng);
    while (static_cast<int>(s.size()) < n) s.insert(code(rng));
    failures += exact({s.begin(), s.end()}, 12) ? 0 : 1;
    ++cases;
  }
  const double secs = seconds_since(t0);
  const std::string d = fmt("%zu sets, %zu inexact, %.1f s (limit 120 s)", cases, failures, secs);
  return failures == 0 && secs < 120.0 ? ok(d) : bad(d);
}

AlertZone fig7_zone() {
  return AlertZone({{4, 0, 0}, {4, 1, 0}, {5, 1, 0}, {4, 2, 0}, {5, 2, 0}, {4, 3, 0}, {5, 3, 0}, {6, 3, 0},
                    {4, 4, 0}, {5, 4, 0}});
}

struct TableRow {
  int cost, gain;
  std::set<std::pair<int, int>> attached, attaching;
};

std::set<std::pair<int, int>> xy(const std::vector<CellId>& v) {
  std::set<std::pair<int, int>> s;
  for (const auto& c : v) s.insert({c.x, c.y});
  return s;
}

Outcome table1_fig7() {
  const std::vector<std::vector<TableRow>> table = {
      {{1, 6, {{5, 0}}, {{4, 0}, {4, 1}, {5, 1}}}},
      {{1, 1, {{6, 2}}, {{6, 3}}}, {1, 1, {{7, 3}}, {{6, 3}}}, {3, 2, {{7, 2}, {7, 3}, {6, 2}}, {{6, 3}}}},
      {{2, 1, {{4, 5}, {5, 5}}, {{4, 4}, {5, 4}}}},
  };
  const AlertZone a = fig7_zone();
  const GridSpec grid(8);
  const expansion::CellSet a0(a.cells().begin(), a.cells().end());

  expansion::ExpansionOptions all;
  all.single_cell = expansion::SingleCellPatches::all_adjacent;
  const auto groups = expansion::candidate_groups(8, 0, a0, all);
  bool table_ok = groups.size() == table.size();
  std::size_t patches = 0;
  for (std::size_t g = 0; table_ok && g < groups.size(); ++g) {
    table_ok = groups[g].patches.size() == table[g].size();
    for (std::size_t p = 0; table_ok && p < table[g].size(); ++p) {
      const auto& got = groups[g].patches[p];
      const auto& want = table[g][p];
      table_ok = got.cost == want.cost && got.gain == want.gain && xy(got.attached) == want.attached &&
                 xy(got.attaching) == want.attaching;
      ++patches;
    }
  }

  const auto sel = expansion::knapsack_for_groups(10, groups);
  std::set<std::set<std::pair<int, int>>> picked;
  for (const auto& p : sel.patches) picked.insert(xy(p.attached));
  const std::set<std::set<std::pair<int, int>>> want_pick = {
      {{5, 0}}, {{7, 2}, {7, 3}, {6, 2}}, {{4, 5}, {5, 5}}};
  const bool pick_ok = picked == want_pick && sel.cost == 6 && sel.gain == 9;

  const auto z = expansion::expand_zone(1.0, a, grid);
  const bool walk_ok = z.trace.size() >= 2 && z.trace[0].accepted && z.trace[0].budget_before == 10 &&
                       z.trace[0].budget_after == 1 && z.trace[1].budget_before == 1;
  std::set<std::pair<int, int>> want_final;
  for (int y = 0; y <= 3; ++y)
    for (int x = 4; x <= 7; ++x) want_final.insert({x, y});
  for (int y = 4; y <= 5; ++y)
    for (int x = 4; x <= 5; ++x) want_final.insert({x, y});
  const bool final_ok = xy(z.cells.cells()) == want_final;

  const std::string d = fmt("%zu patches match the table: %s; W=10 selects {p1,p4,p5} cost %d gain %d: %s; "
                            "W entering level 1 = %d: %s; final zone: %s",
                            patches, table_ok ? "yes" : "no", sel.cost, sel.gain, pick_ok ? "yes" : "no",
                            z.trace.size() >= 2 ? z.trace[1].budget_before : -1, walk_ok ? "yes" : "no",
                            final_ok ? "yes" : "no");
  return table_ok && pick_ok && walk_ok && final_ok ? ok(d) : bad(d);
}

// Exhaustive multiple-choice knapsack.
int brute_force(int W, const std::vector<expansion::PatchGroup>& groups, std::size_t i = 0) {
  if (i == groups.size()) return 0;
  int best = brute_force(W, groups, i + 1);
  for (const auto& p : groups[i].patches) {
    if (p.cost <= W) best = std::max(best, p.gain + brute_force(W - p.cost, groups, i + 1));
  }
  return best;
}

Outcome knapsack_vs_brute_force() {
  bilinear::Rng rng(808);
  std::uniform_int_distribution<int> ngroups(0, 12), npatches(1, 2), cost(1, 8), gain(0, 8), cap(0, 20);
  int failures = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<expansion::PatchGroup> groups(static_cast<std::size_t>(ngroups(rng)));
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      groups[gi].patches.resize(static_cast<std::size_t>(npatches(rng)));
      for (auto& p : groups[gi].patches) {
        p.attached = {{static_cast<int>(gi), 0, 0}};  // tags the owning group
        p.cost = cost(rng);
        p.gain = gain(rng);
      }
    }
    const int W = cap(rng);
    const auto sel = expansion::knapsack_for_groups(W, groups);
    // Feasibility: cost within budget, sums consistent, at most one per group.
    int c = 0, gsum = 0;
    bool feasible = true;
    std::set<int> used;
    for (const auto& p : sel.patches) {
      c += p.cost;
      gsum += p.gain;
      feasible = feasible && used.insert(p.attached.at(0).x).second;
    }
    feasible = feasible && c <= W && c == sel.cost && gsum == sel.gain;
    if (!feasible || sel.gain != brute_force(W, groups)) ++failures;
  }
  const std::string d = fmt("1000 instances, %d disagreements", failures);
  return failures == 0 ? ok(d) : bad(d);
}

AlertZone random_zone(Shape shape, int d, bilinear::Rng& rng) {
  std::uniform_int_distribution<int> area(24, 400);
  std::bernoulli_distribution rot(0.5);
  const int a = area(rng);
  const bool r = rot(rng);
  const auto [w, h] = workload::zone_extent(shape, a, r);
  std::uniform_int_distribution<int> px(0, d - w), py(0, d - h);
  return workload::make_zone(shape, a, px(rng), py(rng), r);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Outcome expansion_contract() {
  const std::vector<double> alphas = {0.02, 0.04, 0.06, 0.08, 0.10};
  std::size_t violations = 0, runs = 0;
  int bad_sweeps = 0;
  std::string summary;
  for (int d : {64, 128}) {
    for (Shape shape : {Shape::square, Shape::rectangular, Shape::circular}) {
      bilinear::Rng rng(900 + static_cast<unsigned>(d) + static_cast<unsigned>(shape));
      std::vector<AlertZone> zones;
      for (int i = 0; i < 200; ++i) zones.push_back(random_zone(shape, d, rng));
      const GridSpec grid(d);
      std::vector<double> medians;
      for (double alpha : alphas) {
        std::vector<double> imp;
        for (const auto& a : zones) {
          const auto z = expansion::expand_zone(alpha, a, grid);
          // Independent check of the enlarged zone.
          const auto before = expansion::zone_pairings(grid, a, Encoding::gray);
          const auto after = expansion::zone_pairings(grid, z.cells, Encoding::gray);
          const bool contained = std::includes(z.cells.cells().begin(), z.cells.cells().end(), a.cells().begin(),
                                               a.cells().end());
          const auto limit = static_cast<double>(a.size()) * (1.0 + alpha) + 1e-9;
          if (!contained || static_cast<double>(z.cells.size()) > limit || after > before) ++violations;
          ++runs;
          imp.push_back(static_cast<double>(before) / static_cast<double>(after));
        }
        medians.push_back(median(imp));
      }
      int inversions = 0;
      for (std::size_t i = 0; i + 1 < medians.size(); ++i) inversions += medians[i + 1] < medians[i] ? 1 : 0;
      if (inversions > 1 || medians.back() <= 1.0 || medians.back() < medians.front()) ++bad_sweeps;
      summary += fmt(" d=%d %s:", d, std::string(encoding::to_string(shape)).c_str());
      for (double m : medians) summary += fmt(" %.3f", m);
    }
  }
  const std::string d = fmt("%zu runs, %zu contract violations, %d failing sweeps; median improvement by alpha"
                            " 0.02..0.10:%s",
                            runs, violations, bad_sweeps, summary.c_str());
  return violations == 0 && bad_sweeps == 0 ? ok(d) : bad(d);
}

Outcome parallel_speedup() {
  workload::BenchConfig cfg;
  cfg.d = 128;
  cfg.coverage = 0.06;
  cfg.encoding = Encoding::gray;
  cfg.seed = 1010;
  bilinear::Rng rng(cfg.seed);
  const GridSpec grid(cfg.d);
  const auto zones = workload::gen_zones(cfg, rng);
  const auto users = workload::gen_users(400, rng);
  auto keys = hve::setup(encoding::width(grid, cfg.encoding), bilinear::gen_params(62, cfg.seed), rng);
  hve::precompute(keys.pk);
  hve::precompute(keys.sk);

  std::vector<engine::ZoneTokenSet> sets;
  for (std::size_t i = 0; i < zones.size(); ++i) {
    std::vector<hve::Token> toks;
    for (const auto& p : minimize::minimize(encoding::zone_to_cellset(grid, zones[i], cfg.encoding), 14).patterns)
      toks.push_back(hve::gen_token(keys.sk, p, rng));
    sets.emplace_back("z" + std::to_string(i), std::move(toks));
  }
  std::vector<engine::UserCiphertext> cts;
  for (const auto& u : users) {
    const auto idx = encoding::index_for(grid, encoding::cell_of_point(grid, u.x, u.y), cfg.encoding);
    cts.push_back({"u" + std::to_string(u.id), hve::encrypt(keys.pk, idx, hve::Message{u.id + 1}, rng)});
  }

  auto timed = [&](int workers, std::vector<engine::MatchResult>& out) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      out = engine::match_all(cts, sets, workers);
      best = std::min(best, seconds_since(t0));
    }
    return best;
  };
  std::vector<engine::MatchResult> r1, r8;
  const double t1 = timed(1, r1);
  const double t8 = timed(8, r8);
  auto key = [](const engine::MatchResult& r) {
    return std::tuple(r.user, r.zone, r.message ? static_cast<long long>(r.message->value) : -1LL, r.pairings);
  };
  std::multiset<decltype(key(r1[0]))> m1, m8;
  for (const auto& r : r1) m1.insert(key(r));
  for (const auto& r : r8) m8.insert(key(r));
  const bool same = m1 == m8;
  const double speedup = t1 / t8;
  const unsigned cores = std::thread::hardware_concurrency();
  if (cores >= 8) {
    const std::string d = fmt("%zu tasks, multiset identical: %s, speedup %.2f (limit 5.6) on %u cores", r1.size(),
                              same ? "yes" : "no", speedup, cores);
    return same && speedup >= 5.6 ? ok(d) : bad(d);
  }
  const std::string d = fmt("%zu tasks, multiset identical: %s; speedup not evaluated on %u core(s) (needs 8), "
                            "measured %.2f", r1.size(), same ? "yes" : "no", cores, speedup);
  return same ? skipped(d) : bad(d);
}

Outcome precompute_equivalence() {
  bilinear::Rng rng(1111);
  const auto params = bilinear::gen_params(62, 1111);
  auto keys = hve::setup(4, params, rng);
  hve::precompute(keys.pk);
  hve::precompute(keys.sk);
  const auto& pt = *keys.pk.tables;
  const auto& st = *keys.sk.tables;

  std::vector<const bilinear::GPowerTable*> g_tables = {&pt.v, &st.v};
  for (const auto* v : {&pt.h, &pt.uh, &pt.w, &st.h, &st.uh, &st.w})
    for (const auto& t : *v) g_tables.push_back(&t);
  std::size_t mismatches = 0, checks = 0;
  for (const auto* t : g_tables) {
    for (int i = 0; i < 10000; ++i) {
      const auto k = bilinear::random_zn(*params, rng);
      mismatches += bilinear::pow_pre(*t, k) == bilinear::pow(t->base(), k) ? 0 : 1;
      ++checks;
    }
  }
  for (int i = 0; i < 10000; ++i) {
    const auto k = bilinear::random_zn(*params, rng);
    mismatches += bilinear::pow_pre(pt.a, k) == bilinear::pow(pt.a.base(), k) ? 0 : 1;
    ++checks;
  }

  // Table misses over an encrypt + token pipeline, with and without tables.
  auto pipeline = [&](bool tables) {
    bilinear::Rng r(77);
    auto kp = hve::setup(14, params, r);
    if (tables) {
      hve::precompute(kp.pk);
      hve::precompute(kp.sk);
    }
    const GridSpec grid(128);
    engine::reset_instrument();
    for (int u = 0; u < 50; ++u) {
      const CellId c{u * 2, u, 0};
      const auto ct = hve::encrypt(kp.pk, encoding::index_for(grid, c, Encoding::gray), hve::Message{1}, r);
      const auto tok = hve::gen_token(kp.sk, Pattern("01**10**0*1***"), r);
      (void)hve::query(tok, ct);
    }
    return engine::instrument();
  };
  const auto naive = pipeline(false);
  const auto cached = pipeline(true);
  const std::string d =
      fmt("%zu pow_pre checks over %zu bases, %zu mismatches; table misses %llu with tables vs %llu without",
          checks, g_tables.size() + 1, mismatches, static_cast<unsigned long long>(cached.exponentiations),
          static_cast<unsigned long long>(naive.exponentiations));
  return mismatches == 0 && cached.exponentiations < naive.exponentiations ? ok(d) : bad(d);
}

Outcome encoding_trend() {
  const GridSpec grid(128);
  auto ratios = [&](workload::Distribution dist) {
    std::vector<double> r;
    for (std::uint64_t seed = 1; r.size() < 50; ++seed) {
      workload::BenchConfig cfg;
      cfg.d = 128;
      cfg.dist = dist;
      cfg.coverage = 0.06;
      cfg.shape = static_cast<Shape>(seed % 3);
      cfg.seed = seed;
      bilinear::Rng rng(seed);
      for (const auto& z : workload::gen_zones(cfg, rng)) {
        if (r.size() == 50) break;
        const auto gray = minimize::minimized_cost(encoding::zone_to_codes(grid, z, Encoding::gray), 14).pairings;
        const auto hier =
            minimize::minimized_cost(encoding::zone_to_codes(grid, z, Encoding::hierarchical), 14).pairings;
        r.push_back(static_cast<double>(gray) / static_cast<double>(hier));
      }
    }
    return median(r);
  };
  const double gaussian = ratios(workload::Distribution::gaussian);
  const double uniform = ratios(workload::Distribution::uniform);
  const std::string d =
      fmt("median gray/hier pairing ratio: gaussian %.3f (limit 1.0), uniform %.3f (no requirement)", gaussian, uniform);
  return gaussian <= 1.0 ? ok(d) : bad(d);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"HVE oracle equivalence", hve_oracle},
      {"Width law", width_law},
      {"Baseline golden example", fig3_baseline},
      {"Hierarchical cover golden example", fig5_hier},
      {"Gray adjacency", gray_adjacency},
      {"Minimizer exactness", minimizer_exactness},
      {"Patch table and expansion walkthrough", table1_fig7},
      {"Knapsack DP vs brute force", knapsack_vs_brute_force},
      {"Expansion contract", expansion_contract},
      {"Parallel matching", parallel_speedup},
      {"Precomputation equivalence", precompute_equivalence},
      {"Encoding trend", encoding_trend},
  };
  int failed = 0, skips = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = bad(std::string("exception: ") + e.what());
    }
    failed += o.kind == Outcome::fail ? 1 : 0;
    skips += o.kind == Outcome::skip ? 1 : 0;
    const char* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::skip ? "SKIP" : "FAIL";
    std::printf("[%s] %2zu %s: %s\n", tag, i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed, %d not evaluated on this machine\n", failed, criteria.size(), skips);
  return failed == 0 ? 0 : 1;
}
