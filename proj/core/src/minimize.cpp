#include "geofence/minimize.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace geofence::minimize {

namespace {

std::uint64_t key(const Cube& c) { return (static_cast<std::uint64_t>(c.wild) << 32) | c.value; }

void check_width(int width) {
  if (width < 0 || width > kMaxWidth) throw std::invalid_argument("minimize: width must be in [0, 32]");
}

std::uint32_t width_mask(int width) {
  return width == 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << width) - 1);
}

std::vector<std::uint32_t> normalized(std::span<const std::uint32_t> codes, int width) {
  check_width(width);
  const std::uint32_t mask = width_mask(width);
  std::vector<std::uint32_t> out(codes.begin(), codes.end());
  for (auto c : out) {
    if ((c & ~mask) != 0) throw std::invalid_argument("minimize: code wider than the declared width");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Ranked {
  Cube cube;
  std::string text;
};

}  // namespace

bool token_order(const Pattern& a, const Pattern& b) {
  if (a.wildcard_count() != b.wildcard_count()) return a.wildcard_count() > b.wildcard_count();
  return a.str() < b.str();
}

std::vector<Cube> prime_implicants(std::span<const std::uint32_t> codes_in, int width) {
  const auto codes = normalized(codes_in, width);
  std::vector<Cube> primes;
  std::vector<Cube> current;
  current.reserve(codes.size());
  for (auto c : codes) current.push_back({c, 0});

  while (!current.empty()) {
    std::unordered_set<std::uint64_t> present;
    present.reserve(current.size() * 2);
    for (const auto& c : current) present.insert(key(c));

    std::unordered_set<std::uint64_t> merged;
    std::vector<Cube> next;
    std::unordered_set<std::uint64_t> next_seen;
    for (const auto& c : current) {
      for (int b = 0; b < width; ++b) {
        const std::uint32_t bit = std::uint32_t{1} << b;
        if ((c.wild & bit) || (c.value & bit)) continue;
        const Cube partner{c.value | bit, c.wild};
        if (!present.contains(key(partner))) continue;
        merged.insert(key(c));
        merged.insert(key(partner));
        const Cube joined{c.value, c.wild | bit};
        if (next_seen.insert(key(joined)).second) next.push_back(joined);
      }
    }
    for (const auto& c : current) {
      if (!merged.contains(key(c))) primes.push_back(c);
    }
    current = std::move(next);
  }
  return primes;
}

std::vector<std::uint32_t> expand_cube(const Cube& c, int width) {
  check_width(width);
  std::vector<std::uint32_t> out;
  out.reserve(std::size_t{1} << c.wildcard_count());
  std::uint32_t sub = c.wild;
  for (;;) {
    out.push_back(c.value | sub);
    if (sub == 0) break;
    sub = (sub - 1) & c.wild;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cube> minimize_codes(std::span<const std::uint32_t> codes_in, int width) {
  const auto members = normalized(codes_in, width);
  if (members.empty()) return {};

  std::unordered_map<std::uint32_t, std::size_t> index_of;
  index_of.reserve(members.size() * 2);
  for (std::size_t i = 0; i < members.size(); ++i) index_of.emplace(members[i], i);

  std::vector<Ranked> primes;
  for (const auto& c : prime_implicants(members, width)) primes.push_back({c, c.to_pattern(width).str()});

  std::vector<std::vector<std::size_t>> covers(primes.size());
  std::vector<std::vector<std::size_t>> coverers(members.size());
  for (std::size_t p = 0; p < primes.size(); ++p) {
    for (auto code : expand_cube(primes[p].cube, width)) {
      const auto m = index_of.at(code);
      covers[p].push_back(m);
      coverers[m].push_back(p);
    }
  }

  std::vector<bool> chosen(primes.size(), false);
  std::vector<bool> covered(members.size(), false);
  std::size_t uncovered = members.size();
  auto take = [&](std::size_t p) {
    chosen[p] = true;
    for (auto m : covers[p]) {
      if (!covered[m]) {
        covered[m] = true;
        --uncovered;
      }
    }
  };

  for (std::size_t m = 0; m < members.size(); ++m) {
    if (coverers[m].size() == 1 && !chosen[coverers[m][0]]) take(coverers[m][0]);
  }

  auto better = [&](std::size_t a, std::size_t b) {
    const int wa = primes[a].cube.wildcard_count(), wb = primes[b].cube.wildcard_count();
    if (wa != wb) return wa > wb;
    return primes[a].text < primes[b].text;
  };

  while (uncovered > 0) {
    std::size_t best = primes.size();
    std::size_t best_gain = 0;
    for (std::size_t p = 0; p < primes.size(); ++p) {
      if (chosen[p]) continue;
      std::size_t gain = 0;
      for (auto m : covers[p]) gain += covered[m] ? 0 : 1;
      if (gain == 0) continue;
      if (gain > best_gain || (gain == best_gain && better(p, best))) {
        best = p;
        best_gain = gain;
      }
    }
    take(best);
  }

  // Drop primes made redundant by later picks, most specific first.
  std::vector<std::size_t> picked;
  for (std::size_t p = 0; p < primes.size(); ++p) {
    if (chosen[p]) picked.push_back(p);
  }
  std::vector<int> multiplicity(members.size(), 0);
  for (auto p : picked) {
    for (auto m : covers[p]) ++multiplicity[m];
  }
  std::sort(picked.begin(), picked.end(), [&](std::size_t a, std::size_t b) { return better(b, a); });
  std::vector<Cube> out;
  for (auto p : picked) {
    const bool redundant =
        std::all_of(covers[p].begin(), covers[p].end(), [&](std::size_t m) { return multiplicity[m] > 1; });
    if (redundant) {
      for (auto m : covers[p]) --multiplicity[m];
    } else {
      out.push_back(primes[p].cube);
    }
  }

  std::sort(out.begin(), out.end(), [&](const Cube& a, const Cube& b) {
    if (a.wildcard_count() != b.wildcard_count()) return a.wildcard_count() > b.wildcard_count();
    return a.to_pattern(width).str() < b.to_pattern(width).str();
  });
  return out;
}

Cover minimize(std::span<const std::string> cells, int width) {
  check_width(width);
  std::vector<std::uint32_t> codes;
  codes.reserve(cells.size());
  for (const auto& s : cells) {
    if (static_cast<int>(s.size()) != width)
      throw std::invalid_argument("minimize: cell '" + s + "' does not have width " + std::to_string(width));
    codes.push_back(bits_to_code(s));
  }
  if (codes.empty()) throw std::invalid_argument("minimize: empty cell set");
  Cover cover;
  cover.width = width;
  for (const auto& c : minimize_codes(codes, width)) cover.patterns.push_back(c.to_pattern(width));
  return cover;
}

std::vector<std::string> expand_pattern(const Pattern& p) {
  const int width = static_cast<int>(p.size());
  std::vector<std::string> out;
  for (auto code : expand_cube(Cube::from_pattern(p), width)) out.push_back(code_to_bits(code, width));
  return out;
}

CoverCost cover_cost(const Cover& c) {
  CoverCost cost;
  for (const auto& p : c.patterns) {
    cost.non_wildcards += p.fixed_count();
    cost.pairings += pairing_cost(p);
  }
  return cost;
}

CoverCost cover_cost(std::span<const Cube> cubes, int width) {
  CoverCost cost;
  for (const auto& c : cubes) {
    const auto fixed = static_cast<std::size_t>(width - c.wildcard_count());
    cost.non_wildcards += fixed;
    cost.pairings += 1 + 2 * fixed;
  }
  return cost;
}

CoverCost minimized_cost(std::span<const std::uint32_t> codes, int width) {
  const auto cubes = minimize_codes(codes, width);
  return cover_cost(cubes, width);
}

void write_pla(std::ostream& os, const Cover& c) {
  os << ".i " << c.width << "\n.o 1\n.p " << c.patterns.size() << '\n';
  for (const auto& p : c.patterns) {
    std::string row = p.str();
    std::replace(row.begin(), row.end(), Pattern::kWildcard, '-');
    os << row << " 1\n";
  }
  os << ".e\n";
}

Cover read_pla(std::istream& is) {
  Cover c;
  c.width = -1;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string first;
    ss >> first;
    if (first == ".e" || first == ".end") break;
    if (first == ".i") {
      ss >> c.width;
      continue;
    }
    if (first == ".o") {
      int outputs = 0;
      ss >> outputs;
      if (outputs != 1) throw std::runtime_error("read_pla: only single-output PLAs are supported");
      continue;
    }
    if (first[0] == '.') continue;
    std::string out;
    ss >> out;
    if (out != "1") continue;
    std::replace(first.begin(), first.end(), '-', Pattern::kWildcard);
    if (static_cast<int>(first.size()) != c.width) throw std::runtime_error("read_pla: row width mismatch");
    c.patterns.emplace_back(first);
  }
  if (c.width < 0) throw std::runtime_error("read_pla: missing .i");
  return c;
}

}  // namespace geofence::minimize
