#include "geofence/bench.hpp"

#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "geofence/engine.hpp"
#include "geofence/expansion.hpp"
#include "geofence/hve.hpp"
#include "geofence/minimize.hpp"

namespace geofence::bench {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : 1.0; }

struct ZoneTokens {
  std::vector<Pattern> patterns;
  std::uint64_t pairings = 0;
  std::uint64_t non_wildcards = 0;
};

ZoneTokens zone_patterns(const encoding::GridSpec& grid, const encoding::AlertZone& zone, encoding::Encoding e) {
  ZoneTokens out;
  if (e == encoding::Encoding::baseline) {
    out.patterns.push_back(encoding::baseline_token(grid, zone));
  } else {
    const int w = static_cast<int>(encoding::width(grid, e));
    for (const auto& c : minimize::minimize_codes(encoding::zone_to_codes(grid, zone, e), w))
      out.patterns.push_back(c.to_pattern(w));
  }
  for (const auto& p : out.patterns) {
    out.pairings += pairing_cost(p);
    out.non_wildcards += p.fixed_count();
  }
  return out;
}

struct MatchRun {
  double wall_ms = 0.0;
  std::uint64_t pairings = 0;
  std::uint64_t tokens = 0;
  std::uint64_t non_wildcards = 0;
  double tokengen_ms = 0.0;
  std::uint64_t cover_pairings = 0;
};

MatchRun tokens_and_match(const encoding::GridSpec& grid, const std::vector<encoding::AlertZone>& zones,
                          const BenchConfig& cfg, const hve::SecretKey& sk,
                          const std::vector<engine::UserCiphertext>& cts, bilinear::Rng& rng) {
  MatchRun run;
  std::vector<engine::ZoneTokenSet> sets;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const auto zt = zone_patterns(grid, zones[i], cfg.encoding);
    std::vector<hve::Token> toks;
    for (const auto& p : zt.patterns) toks.push_back(hve::gen_token(sk, p, rng));
    run.tokens += toks.size();
    run.non_wildcards += zt.non_wildcards;
    run.cover_pairings += zt.pairings;
    sets.emplace_back("z" + std::to_string(i), std::move(toks));
  }
  run.tokengen_ms = ms_since(t0);

  const auto t1 = Clock::now();
  const auto results = engine::match_all(cts, sets, cfg.workers);
  run.wall_ms = ms_since(t1);
  for (const auto& r : results) run.pairings += r.pairings;
  return run;
}

}  // namespace

const PhaseRow& BenchReport::row(const std::string& phase) const {
  for (const auto& r : rows) {
    if (r.phase == phase) return r;
  }
  throw std::out_of_range("BenchReport: no phase '" + phase + "'");
}

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.validate();
  BenchReport report;
  report.config = cfg;

  bilinear::Rng rng(cfg.seed);
  const encoding::GridSpec grid(cfg.d);
  const auto zones = workload::gen_zones(cfg, rng);
  const auto users = workload::gen_users(cfg.users, rng);
  const bool expand = cfg.alpha > 0.0 && cfg.encoding != encoding::Encoding::baseline;

  // Expansion.
  PhaseRow exp_row{"expansion"};
  std::vector<encoding::AlertZone> expanded = zones;
  {
    const auto t0 = Clock::now();
    if (expand) {
      expansion::ExpansionOptions opt;
      opt.encoding = cfg.encoding;
      for (auto& z : expanded) z = expansion::expand_zone(cfg.alpha, z, grid, opt).cells;
    }
    exp_row.wall_ms = ms_since(t0);
    for (const auto& z : expanded) {
      const auto zt = zone_patterns(grid, z, cfg.encoding);
      exp_row.pairings += zt.pairings;
      exp_row.tokens += zt.patterns.size();
      exp_row.non_wildcards += zt.non_wildcards;
    }
  }

  // Keys.
  const std::size_t width = encoding::width(grid, cfg.encoding);
  auto params = bilinear::gen_params(cfg.bits, cfg.seed);
  auto keys = hve::setup(width, params, rng);
  // Tables cost 256 elements per base; skip them for very wide baseline keys.
  constexpr std::size_t kMaxTableWidth = 1024;
  if (width <= kMaxTableWidth) {
    hve::precompute(keys.pk);
    hve::precompute(keys.sk);
  }

  // Encryption.
  PhaseRow enc_row{"encryption"};
  std::vector<engine::UserCiphertext> cts;
  {
    const auto t0 = Clock::now();
    for (const auto& u : users) {
      const auto cell = encoding::cell_of_point(grid, u.x, u.y);
      const auto index = encoding::index_for(grid, cell, cfg.encoding);
      cts.push_back({"u" + std::to_string(u.id), hve::encrypt(keys.pk, index, hve::Message{u.id + 1}, rng)});
    }
    enc_row.wall_ms = ms_since(t0);
    enc_row.tokens = cts.size();
  }

  // Token generation and matching on the (possibly expanded) zones.
  const MatchRun with = tokens_and_match(grid, expanded, cfg, keys.sk, cts, rng);
  MatchRun without = with;
  if (expand) without = tokens_and_match(grid, zones, cfg, keys.sk, cts, rng);

  const double improvement = ratio(static_cast<double>(without.pairings), static_cast<double>(with.pairings));
  const double time_ratio = expand ? ratio(without.wall_ms, with.wall_ms) : 1.0;

  exp_row.improvement = ratio(static_cast<double>(without.cover_pairings), static_cast<double>(with.cover_pairings));
  PhaseRow tok_row{"tokengen", with.tokengen_ms, with.cover_pairings, with.tokens, with.non_wildcards};
  PhaseRow query_row{"query", with.wall_ms, with.pairings, with.tokens, with.non_wildcards, improvement, time_ratio};

  report.rows = {exp_row, tok_row, enc_row, query_row};
  return report;
}

std::string csv_header() {
  return "d,encoding,coverage,dist,shape,alpha,workers,seed,bits,zones,users,"
         "phase,wall_ms,pairings,tokens,non_wildcards,improvement,time_ratio";
}

void write_report(std::ostream& os, const BenchReport& r) {
  const auto& c = r.config;
  os << "# gaussian_sigma=d/8 rect_skew=" << fmt_double(workload::kRectSkew) << '\n';
  os << csv_header() << '\n';
  for (const auto& row : r.rows) {
    os << c.d << ',' << encoding::to_string(c.encoding) << ',' << fmt_double(c.coverage) << ','
       << workload::to_string(c.dist) << ',' << encoding::to_string(c.shape) << ',' << fmt_double(c.alpha) << ','
       << c.workers << ',' << c.seed << ',' << c.bits << ',' << c.zones << ',' << c.users << ',' << row.phase << ','
       << fmt_double(row.wall_ms) << ',' << row.pairings << ',' << row.tokens << ',' << row.non_wildcards << ','
       << fmt_double(row.improvement) << ',' << fmt_double(row.time_ratio) << '\n';
  }
}

BenchReport read_report(std::istream& is) {
  BenchReport r;
  std::string line;
  bool header_seen = false;
  bool first_row = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != csv_header()) throw std::runtime_error("read_report: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 18) throw std::runtime_error("read_report: expected 18 fields, got " + std::to_string(f.size()));

    BenchConfig c;
    c.d = std::stoi(f[0]);
    c.encoding = encoding::parse_encoding(f[1]);
    c.coverage = std::strtod(f[2].c_str(), nullptr);
    c.dist = workload::parse_distribution(f[3]);
    c.shape = encoding::parse_shape(f[4]);
    c.alpha = std::strtod(f[5].c_str(), nullptr);
    c.workers = std::stoi(f[6]);
    c.seed = std::stoull(f[7]);
    c.bits = std::stoi(f[8]);
    c.zones = std::stoi(f[9]);
    c.users = std::stoi(f[10]);
    if (first_row) {
      r.config = c;
      first_row = false;
    } else if (!(c == r.config)) {
      throw std::runtime_error("read_report: rows disagree on the configuration");
    }

    PhaseRow row;
    row.phase = f[11];
    row.wall_ms = std::strtod(f[12].c_str(), nullptr);
    row.pairings = std::stoull(f[13]);
    row.tokens = std::stoull(f[14]);
    row.non_wildcards = std::stoull(f[15]);
    row.improvement = std::strtod(f[16].c_str(), nullptr);
    row.time_ratio = std::strtod(f[17].c_str(), nullptr);
    r.rows.push_back(std::move(row));
  }
  if (!header_seen) throw std::runtime_error("read_report: missing header");
  return r;
}

}  // namespace geofence::bench
