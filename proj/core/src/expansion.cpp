#include "geofence/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

#include "geofence/minimize.hpp"

namespace geofence::expansion {

namespace {

int floor_div4(int w) { return w >= 0 ? w / 4 : -((-w + 3) / 4); }

std::size_t pairings_of(const GridSpec& grid, const CellSet& cells, Encoding e) {
  if (cells.empty()) return 0;
  std::vector<std::uint32_t> codes;
  codes.reserve(cells.size());
  for (const auto& c : cells) codes.push_back(encoding::cell_code(grid, c, e));
  return minimize::minimized_cost(codes, 2 * grid.log_d()).pairings;
}

std::size_t non_wildcards_of(const GridSpec& grid, const std::vector<CellId>& cells, Encoding e) {
  if (cells.empty()) return 0;
  std::vector<std::uint32_t> codes;
  codes.reserve(cells.size());
  for (const auto& c : cells) codes.push_back(encoding::cell_code(grid, c, e));
  return minimize::minimized_cost(codes, 2 * grid.log_d()).non_wildcards;
}

}  // namespace

Boundary find_boundary(int d_k, const CellSet& a_k) {
  if (a_k.empty()) throw std::invalid_argument("find_boundary: empty zone");
  Boundary b{a_k.begin()->x, a_k.begin()->x, a_k.begin()->y, a_k.begin()->y};
  for (const auto& c : a_k) {
    b.min_x = std::min(b.min_x, c.x);
    b.max_x = std::max(b.max_x, c.x);
    b.min_y = std::min(b.min_y, c.y);
    b.max_y = std::max(b.max_y, c.y);
  }
  b.min_x &= ~1;
  b.min_y &= ~1;
  b.max_x = std::min(b.max_x | 1, d_k - 1);
  b.max_y = std::min(b.max_y | 1, d_k - 1);
  return b;
}

CellId recover_coord(int i, int x, int y, int k) {
  if (i < 0 || i > 3) throw std::out_of_range("recover_coord: index must be in [0, 3]");
  if (i == 1 || i == 2) ++x;
  if (i == 2 || i == 3) ++y;
  return {x, y, k};
}

Marked mark_zone_cells(const CellSet& a_k, int x, int y, int k) {
  Marked m{};
  for (int i = 0; i < 4; ++i) m[i] = a_k.contains(recover_coord(i, x, y, k));
  return m;
}

std::vector<LocalGroup> patch_groups_inside_area(const Marked& marked, SingleCellPatches mode) {
  std::vector<int> zone, free;
  for (int i = 0; i < 4; ++i) (marked[i] ? zone : free).push_back(i);

  std::vector<LocalGroup> groups;
  switch (zone.size()) {
    case 1: {
      const int z = zone[0];
      const int lo = std::min((z + 1) % 4, (z + 3) % 4);
      const int hi = std::max((z + 1) % 4, (z + 3) % 4);
      LocalGroup g{{{lo}, {z}}};
      if (mode == SingleCellPatches::all_adjacent) g.push_back({{hi}, {z}});
      g.push_back({free, {z}});
      groups.push_back(std::move(g));
      break;
    }
    case 2:
      if ((zone[1] - zone[0]) % 2 == 1) {
        groups.push_back({{free, zone}});
      } else {
        groups.push_back({{{(zone[0] + 1) % 4}, {zone[0]}}});
        groups.push_back({{{(zone[1] + 1) % 4}, {zone[1]}}});
      }
      break;
    case 3:
      groups.push_back({{free, zone}});
      break;
    default:
      throw std::invalid_argument("patch_groups_inside_area: block must hold 1 to 3 zone cells");
  }
  return groups;
}

Patch cost_gain(Patch p, int k) {
  const auto n1 = static_cast<int>(p.attaching.size());
  const auto n2 = static_cast<int>(p.attached.size());
  p.cost = n2;
  p.gain = 0;
  if (n1 + n2 == 2) {
    p.gain = 1;
  } else if (n1 + n2 == 4) {
    if (n1 == 1) p.gain = 2;
    else if (n1 == 2) p.gain = 1;
    else p.gain = 2 * k;
  }
  return p;
}

int measured_gain(const Patch& p, int d_k, Encoding e) {
  const GridSpec grid(d_k);
  std::vector<CellId> after = p.attaching;
  after.insert(after.end(), p.attached.begin(), p.attached.end());
  const auto before_nw = non_wildcards_of(grid, p.attaching, e);
  const auto after_nw = non_wildcards_of(grid, after, e);
  return before_nw > after_nw ? static_cast<int>(before_nw - after_nw) : 0;
}

Selection knapsack_for_groups(int W, const std::vector<PatchGroup>& groups) {
  if (W < 0) throw std::invalid_argument("knapsack_for_groups: negative budget");
  const std::size_t n = groups.size();
  const auto cap = static_cast<std::size_t>(W);
  // best[i][w]: optimum over the first i groups with capacity w.
  std::vector<std::vector<int>> best(n + 1, std::vector<int>(cap + 1, 0));
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t w = 0; w <= cap; ++w) {
      int v = best[i - 1][w];
      for (const auto& p : groups[i - 1].patches) {
        if (p.cost < 0) throw std::invalid_argument("knapsack_for_groups: negative cost");
        const auto c = static_cast<std::size_t>(p.cost);
        if (c <= w) v = std::max(v, best[i - 1][w - c] + p.gain);
      }
      best[i][w] = v;
    }
  }

  Selection sel;
  std::size_t w = cap;
  for (std::size_t i = n; i >= 1; --i) {
    if (best[i][w] == best[i - 1][w]) continue;
    for (const auto& p : groups[i - 1].patches) {
      const auto c = static_cast<std::size_t>(p.cost);
      if (c <= w && best[i - 1][w - c] + p.gain == best[i][w]) {
        sel.patches.push_back(p);
        sel.cost += p.cost;
        sel.gain += p.gain;
        w -= c;
        break;
      }
    }
  }
  std::reverse(sel.patches.begin(), sel.patches.end());
  return sel;
}

std::vector<PatchGroup> candidate_groups(int d_k, int k, const CellSet& a_k, const ExpansionOptions& opt) {
  std::vector<PatchGroup> out;
  if (a_k.empty() || d_k < 2) return out;
  const Boundary b = find_boundary(d_k, a_k);
  for (int y = b.min_y; y + 1 <= b.max_y; y += 2) {
    for (int x = b.min_x; x + 1 <= b.max_x; x += 2) {
      const Marked m = mark_zone_cells(a_k, x, y, k);
      const auto n = std::count(m.begin(), m.end(), true);
      if (n == 0 || n == 4) continue;
      for (const auto& local : patch_groups_inside_area(m, opt.single_cell)) {
        PatchGroup g;
        for (const auto& lp : local) {
          Patch p;
          for (int i : lp.attached) p.attached.push_back(recover_coord(i, x, y, k));
          for (int i : lp.attaching) p.attaching.push_back(recover_coord(i, x, y, k));
          p = cost_gain(std::move(p), k);
          if (opt.gain == GainMode::measured) p.gain = measured_gain(p, d_k, opt.encoding);
          g.patches.push_back(std::move(p));
        }
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

Selection select_patches_level(int W, int d_k, int k, const CellSet& a_k, const ExpansionOptions& opt) {
  if (W < 0) throw std::invalid_argument("select_patches_level: negative budget");
  if (W == 0) return {};
  return knapsack_for_groups(W, candidate_groups(d_k, k, a_k, opt));
}

double ExpandedZone::improvement() const {
  if (pairings_after == 0) return 1.0;
  return static_cast<double>(pairings_before) / static_cast<double>(pairings_after);
}

std::size_t zone_pairings(const GridSpec& grid, const AlertZone& zone, Encoding e) {
  return pairings_of(grid, CellSet(zone.cells().begin(), zone.cells().end()), e);
}

ExpandedZone expand_zone(double alpha, const AlertZone& a, const GridSpec& grid, const ExpansionOptions& opt) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("expand_zone: alpha must be >= 0");
  if (alpha > 1.0) throw std::invalid_argument("expand_zone: alpha must be <= 1");
  if (opt.encoding == Encoding::baseline)
    throw std::invalid_argument("expand_zone: baseline encoding has no hierarchy to expand");
  if (a.empty()) throw std::invalid_argument("expand_zone: empty zone");
  if (a.level() != 0) throw std::invalid_argument("expand_zone: zone must be at level 0");
  a.validate(grid);

  ExpandedZone out;
  out.origin = a;
  out.budget = static_cast<int>(std::floor(alpha * static_cast<double>(a.size()) + 1e-9));

  CellSet hat(a.cells().begin(), a.cells().end());
  CellSet crt = hat;
  std::size_t current = pairings_of(grid, hat, opt.encoding);
  out.pairings_before = current;

  int W = out.budget;
  const int top = grid.log_d();
  for (int k = 0; k <= top && W > 0 && !crt.empty(); ++k) {
    const int d_k = grid.side_at(k);
    LevelTrace lt;
    lt.level = k;
    lt.budget_before = W;
    lt.pairings_before = current;

    const Selection sel = select_patches_level(W, d_k, k, crt, opt);
    CellSet tentative = hat;
    const int span = 1 << k;
    for (const auto& p : sel.patches) {
      for (const auto& c : p.attached) {
        for (int by = c.y * span; by < (c.y + 1) * span; ++by)
          for (int bx = c.x * span; bx < (c.x + 1) * span; ++bx) tentative.insert({bx, by, 0});
      }
    }
    lt.selected = sel.patches;
    lt.base_cells_added = tentative.size() - hat.size();
    lt.pairings_after = tentative.size() == hat.size() ? current : pairings_of(grid, tentative, opt.encoding);
    lt.accepted = lt.pairings_after <= current;
    if (!lt.accepted) {
      lt.budget_after = W;
      out.trace.push_back(std::move(lt));
      break;
    }

    hat = std::move(tentative);
    current = lt.pairings_after;
    for (const auto& p : sel.patches) {
      W -= p.cost;
      crt.insert(p.attached.begin(), p.attached.end());
    }
    W = floor_div4(W);
    lt.budget_after = W;
    out.trace.push_back(std::move(lt));
    if (W <= 0 || k == top) break;

    // Keep only parents whose four children are all zone cells, so every
    // coarse zone cell is fully covered by the expanded zone.
    std::map<std::pair<int, int>, int> children;
    for (const auto& c : crt) ++children[{c.x / 2, c.y / 2}];
    CellSet next;
    for (const auto& [xy, n] : children) {
      if (n == 4) next.insert({xy.first, xy.second, k + 1});
    }
    crt = std::move(next);
  }

  out.cells = AlertZone(std::vector<CellId>(hat.begin(), hat.end()), a.shape());
  out.pairings_after = current;
  return out;
}

void write_report(std::ostream& os, const ExpandedZone& z, double alpha) {
  char alpha_buf[32];
  std::snprintf(alpha_buf, sizeof alpha_buf, "%.17g", alpha);
  char imp_buf[32];
  std::snprintf(imp_buf, sizeof imp_buf, "%.17g", z.improvement());
  os << "original_cells=" << z.origin.size() << '\n';
  os << "added_cells=" << z.added() << '\n';
  os << "alpha=" << alpha_buf << '\n';
  os << "budget=" << z.budget << '\n';
  os << "spent=" << z.added() << '\n';
  os << "pairings_before=" << z.pairings_before << '\n';
  os << "pairings_after=" << z.pairings_after << '\n';
  os << "improvement=" << imp_buf << '\n';
  for (const auto& c : z.cells.cells()) {
    if (!z.origin.contains(c)) os << "added=" << c.x << ',' << c.y << '\n';
  }
}

}  // namespace geofence::expansion
