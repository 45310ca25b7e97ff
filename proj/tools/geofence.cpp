// geofence: key generation, encryption, token generation, zone expansion,
// matching, and benchmarks from the command line.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "geofence/bench.hpp"
#include "geofence/engine.hpp"
#include "geofence/expansion.hpp"
#include "geofence/hve.hpp"
#include "geofence/minimize.hpp"
#include "geofence/workload.hpp"

namespace {

using namespace geofence;

constexpr int kConfigError = 2;

struct Options {
  int grid = 16;
  std::string encoding = "gray";
  double coverage = 0.04;
  double alpha = 0.0;
  int workers = 1;
  std::uint64_t seed = 1;
  int bits = bilinear::kDefaultBits;
  std::string shape = "square";
  std::string dist = "uniform";
  std::string out;
  std::string key;
  std::string zone;
  std::vector<std::string> tokens;
  std::string ciphertexts;
  std::vector<std::string> points;
  std::uint32_t message = 1;
  int users = 0;
  int zones = 8;
};

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("GEOFENCE_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw workload::ConfigError(std::string("GEOFENCE_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

// Writes to `path`, or stdout when path is empty or "-".
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write(out);
}

encoding::Encoding parse_enc(const std::string& s) {
  try {
    return encoding::parse_encoding(s);
  } catch (const std::invalid_argument& e) {
    throw workload::ConfigError(e.what());
  }
}

encoding::GridSpec grid_for(int d, encoding::Encoding e) {
  try {
    encoding::GridSpec g(d);
    (void)encoding::width(g, e);
    return g;
  } catch (const std::exception& ex) {
    throw workload::ConfigError(ex.what());
  }
}

std::string first_line(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::getline(in, line);
  return line;
}

bilinear::ParamsPtr params_from_key(const std::string& path) {
  auto in = open_in(path);
  if (first_line(path).rfind("HVESK", 0) == 0) return hve::read_secret_key(in).params;
  return hve::read_public_key(in).params;
}

int cmd_keygen(const Options& o) {
  const auto e = parse_enc(o.encoding);
  const auto grid = grid_for(o.grid, e);
  if (o.bits < bilinear::kMinBits || o.bits > bilinear::kMaxBits) throw workload::ConfigError("bits out of range");
  const std::uint64_t seed = effective_seed(o.seed);
  bilinear::Rng rng(seed);
  const auto keys = hve::setup(encoding::width(grid, e), bilinear::gen_params(o.bits, seed), rng);
  const std::string prefix = o.out.empty() ? "geofence" : o.out;
  emit(prefix + ".pk", [&](std::ostream& os) { hve::write_public_key(os, keys.pk); });
  emit(prefix + ".sk", [&](std::ostream& os) { hve::write_secret_key(os, keys.sk); });
  std::cerr << "wrote " << prefix << ".pk and " << prefix << ".sk (width " << keys.pk.width() << ")\n";
  return 0;
}

std::pair<double, double> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw workload::ConfigError("point must be x,y: '" + s + "'");
  return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

int cmd_encrypt(const Options& o) {
  const auto e = parse_enc(o.encoding);
  const auto grid = grid_for(o.grid, e);
  if (o.key.empty()) throw workload::ConfigError("encrypt needs --key <public key>");
  auto in = open_in(o.key);
  auto pk = hve::read_public_key(in);
  if (pk.width() != encoding::width(grid, e)) throw workload::ConfigError("key width does not match --grid/--encoding");
  hve::precompute(pk);
  bilinear::Rng rng(effective_seed(o.seed));

  std::vector<std::pair<double, double>> points;
  for (const auto& p : o.points) points.push_back(parse_point(p));
  for (const auto& u : workload::gen_users(o.users, rng)) points.emplace_back(u.x, u.y);
  if (points.empty()) throw workload::ConfigError("encrypt needs --point x,y or --users n");

  emit(o.out, [&](std::ostream& os) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto cell = encoding::cell_of_point(grid, points[i].first, points[i].second);
      const auto index = encoding::index_for(grid, cell, e);
      hve::write_ciphertext(os, hve::encrypt(pk, index, hve::Message{o.message}, rng));
    }
  });
  return 0;
}

encoding::ZoneFile load_zone(const std::string& path) {
  if (path.empty()) throw workload::ConfigError("missing --zone <file>");
  auto in = open_in(path);
  return encoding::read_zone(in);
}

int cmd_tokengen(const Options& o) {
  const auto e = parse_enc(o.encoding);
  if (o.key.empty()) throw workload::ConfigError("tokengen needs --key <secret key>");
  const auto zf = load_zone(o.zone);
  const auto grid = grid_for(zf.d, e);
  auto in = open_in(o.key);
  auto sk = hve::read_secret_key(in);
  if (sk.width() != encoding::width(grid, e)) throw workload::ConfigError("key width does not match zone grid/encoding");
  hve::precompute(sk);
  bilinear::Rng rng(effective_seed(o.seed));

  std::vector<Pattern> patterns;
  if (e == encoding::Encoding::baseline) {
    patterns.push_back(encoding::baseline_token(grid, zf.zone));
  } else {
    const auto cover = minimize::minimize(encoding::zone_to_cellset(grid, zf.zone, e), static_cast<int>(sk.width()));
    patterns = cover.patterns;
  }
  std::size_t pairings = 0;
  emit(o.out, [&](std::ostream& os) {
    for (const auto& p : patterns) {
      pairings += pairing_cost(p);
      hve::write_token(os, hve::gen_token(sk, p, rng));
    }
  });
  std::cerr << patterns.size() << " tokens, " << pairings << " pairings per non-match\n";
  return 0;
}

int cmd_expand(const Options& o) {
  const auto e = parse_enc(o.encoding);
  if (e == encoding::Encoding::baseline) throw workload::ConfigError("expand needs --encoding hier or gray");
  if (o.alpha < 0.0 || o.alpha > 1.0) throw workload::ConfigError("alpha must be in [0, 1]");
  const auto zf = load_zone(o.zone);
  const auto grid = grid_for(zf.d, e);
  expansion::ExpansionOptions opt;
  opt.encoding = e;
  const auto z = expansion::expand_zone(o.alpha, zf.zone, grid, opt);
  expansion::write_report(std::cerr, z, o.alpha);
  emit(o.out, [&](std::ostream& os) { encoding::write_zone(os, grid, z.cells); });
  return 0;
}

int cmd_match(const Options& o) {
  if (o.key.empty() || o.tokens.empty() || o.ciphertexts.empty())
    throw workload::ConfigError("match needs --key, --tokens, and --ciphertexts");
  if (o.workers < 1) throw workload::ConfigError("workers must be >= 1");
  const auto params = params_from_key(o.key);

  std::vector<engine::ZoneTokenSet> zones;
  for (const auto& path : o.tokens) {
    auto in = open_in(path);
    zones.emplace_back(path, hve::read_tokens(in, params));
  }
  std::vector<engine::UserCiphertext> cts;
  {
    auto in = open_in(o.ciphertexts);
    auto all = hve::read_ciphertexts(in, params);
    for (std::size_t i = 0; i < all.size(); ++i) cts.push_back({"u" + std::to_string(i), std::move(all[i])});
  }
  const auto results = engine::match_all(cts, zones, o.workers);
  emit(o.out, [&](std::ostream& os) { engine::write_results_csv(os, results); });
  return 0;
}

int cmd_bench(const Options& o) {
  workload::BenchConfig cfg;
  cfg.d = o.grid;
  cfg.encoding = parse_enc(o.encoding);
  cfg.coverage = o.coverage;
  try {
    cfg.dist = workload::parse_distribution(o.dist);
    cfg.shape = encoding::parse_shape(o.shape);
  } catch (const std::invalid_argument& e) {
    throw workload::ConfigError(e.what());
  }
  cfg.alpha = o.alpha;
  cfg.workers = o.workers;
  cfg.seed = effective_seed(o.seed);
  cfg.bits = o.bits;
  cfg.zones = o.zones;
  cfg.users = o.users;
  cfg.validate();
  const auto report = bench::run_bench(cfg);
  emit(o.out, [&](std::ostream& os) { bench::write_report(os, report); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Location alerts over hidden vector encryption"};
  app.require_subcommand(1);
  Options o;
  o.users = 0;

  auto grid_opts = [&](CLI::App* sc) {
    sc->add_option("--grid", o.grid, "Grid side d")->capture_default_str();
    sc->add_option("--encoding", o.encoding, "baseline, hier, or gray")->capture_default_str();
  };
  auto seed_opt = [&](CLI::App* sc) {
    sc->add_option("--seed", o.seed, "RNG seed (GEOFENCE_SEED overrides)")->capture_default_str();
  };

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair (<out>.pk, <out>.sk)");
  grid_opts(keygen);
  seed_opt(keygen);
  keygen->add_option("--bits", o.bits, "Prime size in bits")->capture_default_str();
  keygen->add_option("--out", o.out, "Output prefix");

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt user locations");
  grid_opts(encrypt);
  seed_opt(encrypt);
  encrypt->add_option("--key", o.key, "Public key file");
  encrypt->add_option("--point", o.points, "Location x,y in [0,1)^2; repeatable");
  encrypt->add_option("--users", o.users, "Additional random users");
  encrypt->add_option("--message", o.message, "Message payload");
  encrypt->add_option("--out", o.out, "Ciphertext file (default stdout)");

  auto* tokengen = app.add_subcommand("tokengen", "Generate the tokens of a zone");
  tokengen->add_option("--encoding", o.encoding, "baseline, hier, or gray")->capture_default_str();
  seed_opt(tokengen);
  tokengen->add_option("--key", o.key, "Secret key file");
  tokengen->add_option("--zone", o.zone, "Zone file");
  tokengen->add_option("--out", o.out, "Token file (default stdout)");

  auto* expand = app.add_subcommand("expand", "Enlarge a zone to cut pairings");
  expand->add_option("--encoding", o.encoding, "hier or gray")->capture_default_str();
  expand->add_option("--alpha", o.alpha, "Expansion ratio")->capture_default_str();
  expand->add_option("--zone", o.zone, "Zone file");
  expand->add_option("--out", o.out, "Expanded zone file (default stdout)");

  auto* match = app.add_subcommand("match", "Match ciphertexts against zone tokens");
  match->add_option("--key", o.key, "Key file holding the group parameters");
  match->add_option("--tokens", o.tokens, "Token file per zone; repeatable");
  match->add_option("--ciphertexts", o.ciphertexts, "Ciphertext file");
  match->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  match->add_option("--out", o.out, "Results CSV (default stdout)");

  auto* benchc = app.add_subcommand("bench", "Run the end-to-end benchmark");
  grid_opts(benchc);
  seed_opt(benchc);
  benchc->add_option("--coverage", o.coverage, "Zone coverage fraction")->capture_default_str();
  benchc->add_option("--alpha", o.alpha, "Expansion ratio")->capture_default_str();
  benchc->add_option("--workers", o.workers, "Worker threads")->capture_default_str();
  benchc->add_option("--bits", o.bits, "Prime size in bits")->capture_default_str();
  benchc->add_option("--shape", o.shape, "square, rect, or circle")->capture_default_str();
  benchc->add_option("--dist", o.dist, "uniform or gaussian")->capture_default_str();
  benchc->add_option("--zones", o.zones, "Zone-count hint")->capture_default_str();
  benchc->add_option("--users", o.users, "Number of users");
  benchc->add_option("--out", o.out, "Report CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*keygen) return cmd_keygen(o);
    if (*encrypt) return cmd_encrypt(o);
    if (*tokengen) return cmd_tokengen(o);
    if (*expand) return cmd_expand(o);
    if (*match) return cmd_match(o);
    if (*benchc) {
      if (benchc->count("--users") == 0) o.users = 100;
      return cmd_bench(o);
    }
  } catch (const workload::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
