#include <benchmark/benchmark.h>

#include <vector>

#include "geofence/engine.hpp"
#include "geofence/expansion.hpp"
#include "geofence/minimize.hpp"
#include "geofence/workload.hpp"

using namespace geofence;
using encoding::AlertZone;
using encoding::Encoding;
using encoding::Shape;

namespace {

const bilinear::ParamsPtr& params() {
  static const auto p = bilinear::gen_params(62, 1);
  return p;
}

void BM_Pairing(benchmark::State& state) {
  bilinear::Rng rng(1);
  const bilinear::GElem a(*params(), bilinear::random_zn(*params(), rng));
  const bilinear::GElem b(*params(), bilinear::random_zn(*params(), rng));
  for (auto _ : state) benchmark::DoNotOptimize(bilinear::pair(a, b));
}
BENCHMARK(BM_Pairing);

void BM_Pow(benchmark::State& state) {
  bilinear::Rng rng(2);
  const bilinear::GElem g(*params(), bilinear::random_zn(*params(), rng));
  const auto k = bilinear::random_zn(*params(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear::pow(g, k));
}
BENCHMARK(BM_Pow);

void BM_PowTable(benchmark::State& state) {
  bilinear::Rng rng(2);
  const bilinear::GElem g(*params(), bilinear::random_zn(*params(), rng));
  const auto table = bilinear::precompute_base(g);
  const auto k = bilinear::random_zn(*params(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(bilinear::pow_pre(table, k));
}
BENCHMARK(BM_PowTable);

// Query cost grows with the number of fixed positions.
void BM_Query(benchmark::State& state) {
  const auto width = static_cast<std::size_t>(state.range(0));
  bilinear::Rng rng(3);
  auto keys = hve::setup(width, params(), rng);
  const auto ct = hve::encrypt(keys.pk, IndexVector(std::vector<std::uint8_t>(width, 0)), hve::Message{1}, rng);
  const auto tok = hve::gen_token(keys.sk, Pattern(std::string(width, '0')), rng);
  for (auto _ : state) benchmark::DoNotOptimize(hve::query(tok, ct));
}
BENCHMARK(BM_Query)->Arg(8)->Arg(12)->Arg(20);

std::vector<AlertZone> zones_for(int d, Shape shape) {
  workload::BenchConfig c;
  c.d = d;
  c.coverage = 0.06;
  c.shape = shape;
  bilinear::Rng rng(4);
  return workload::gen_zones(c, rng);
}

void BM_MinimizeZone(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const encoding::GridSpec grid(d);
  const auto zones = zones_for(d, Shape::circular);
  std::vector<std::vector<std::uint32_t>> codes;
  for (const auto& z : zones) codes.push_back(encoding::zone_to_codes(grid, z, Encoding::gray));
  const int w = static_cast<int>(encoding::width(grid, Encoding::gray));
  for (auto _ : state)
    for (const auto& c : codes) benchmark::DoNotOptimize(minimize::minimize_codes(c, w));
}
BENCHMARK(BM_MinimizeZone)->Arg(64)->Arg(256);

void BM_ExpandZone(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const encoding::GridSpec grid(d);
  const auto zones = zones_for(d, Shape::circular);
  for (auto _ : state)
    for (const auto& z : zones) benchmark::DoNotOptimize(expansion::expand_zone(0.1, z, grid));
}
BENCHMARK(BM_ExpandZone)->Arg(64)->Arg(256);

void BM_MatchAll(benchmark::State& state) {
  const int workers = static_cast<int>(state.range(0));
  const encoding::GridSpec grid(32);
  bilinear::Rng rng(5);
  auto keys = hve::setup(encoding::width(grid, Encoding::gray), params(), rng);
  std::vector<engine::ZoneTokenSet> sets;
  int id = 0;
  for (const auto& z : zones_for(32, Shape::square)) {
    std::vector<hve::Token> toks;
    const auto cover = minimize::minimize(encoding::zone_to_cellset(grid, z, Encoding::gray), 10);
    for (const auto& p : cover.patterns) toks.push_back(hve::gen_token(keys.sk, p, rng));
    sets.emplace_back("z" + std::to_string(id++), std::move(toks));
  }
  std::vector<engine::UserCiphertext> cts;
  for (const auto& u : workload::gen_users(64, rng)) {
    const auto cell = encoding::cell_of_point(grid, u.x, u.y);
    cts.push_back({std::to_string(u.id),
                   hve::encrypt(keys.pk, encoding::index_for(grid, cell, Encoding::gray), hve::Message{u.id}, rng)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(engine::match_all(cts, sets, workers));
}
BENCHMARK(BM_MatchAll)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
