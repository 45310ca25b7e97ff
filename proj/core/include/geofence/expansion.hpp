#pragma once

// Budgeted alert-zone expansion.
//
// A zone A of base cells is enlarged by at most W = floor(alpha |A|) base
// cells. Level by level, 2x2 blocks that are partly inside the current zone
// yield candidate patches (cells to attach); a multiple-choice knapsack picks
// at most one patch per group under the remaining budget. A level's additions
// are kept only when the minimized token cover of the enlarged zone needs no
// more pairings than before.
//
// Block cells are numbered in spiral order:
//
//   0 (x,y)     1 (x+1,y)
//   3 (x,y+1)   2 (x+1,y+1)

#include <array>
#include <cstddef>
#include <iosfwd>
#include <set>
#include <vector>

#include "geofence/encoding.hpp"

namespace geofence::expansion {

using encoding::AlertZone;
using encoding::CellId;
using encoding::Encoding;
using encoding::GridSpec;

/// Cells at one hierarchy level; the k field of every member is equal.
using CellSet = std::set<CellId>;

struct Patch {
  std::vector<CellId> attached;   // non-zone cells to add
  std::vector<CellId> attaching;  // zone cells of the same block
  int cost = 0;                   // |attached|
  int gain = 0;                   // non-wildcards removed, >= 0

  bool operator==(const Patch&) const = default;
};

/// 1-2 patches (up to 3 in all_adjacent mode); at most one is selectable.
struct PatchGroup {
  std::vector<Patch> patches;
};

/// Block-local patch with spiral indices 0..3.
struct LocalPatch {
  std::vector<int> attached;
  std::vector<int> attaching;

  bool operator==(const LocalPatch&) const = default;
};
using LocalGroup = std::vector<LocalPatch>;

struct Boundary {
  int min_x = 0, max_x = 0, min_y = 0, max_y = 0;

  bool operator==(const Boundary&) const = default;
};

enum class GainMode {
  measured,  // actual non-wildcard reduction of the block's minimized cover
  formula,   // fixed table: 1 / 2 / 1 / 2k by block shape
};

enum class SingleCellPatches {
  first_adjacent,  // lowest-index adjacent cell, plus the three-cell patch
  all_adjacent,    // both adjacent cells, plus the three-cell patch
};

struct ExpansionOptions {
  Encoding encoding = Encoding::gray;
  GainMode gain = GainMode::measured;
  SingleCellPatches single_cell = SingleCellPatches::first_adjacent;
};

using Marked = std::array<bool, 4>;

/// MBR of a_k with minima rounded down to even and maxima up to odd, clamped
/// to [0, d_k - 1]. Throws on an empty set.
Boundary find_boundary(int d_k, const CellSet& a_k);

Marked mark_zone_cells(const CellSet& a_k, int x, int y, int k = 0);

/// Throws std::invalid_argument unless 1..3 cells are marked.
std::vector<LocalGroup> patch_groups_inside_area(const Marked& marked,
                                                 SingleCellPatches mode = SingleCellPatches::first_adjacent);

/// Spiral index i of the block at (x, y) to level-k coordinates.
CellId recover_coord(int i, int x, int y, int k = 0);

/// Cost |attached| and formula gain.
Patch cost_gain(Patch p, int k);

/// Non-wildcards of the block's zone cells minus those of zone cells plus
/// attached cells, both minimized on the d_k x d_k grid. Clamped at 0.
int measured_gain(const Patch& p, int d_k, Encoding e);

struct Selection {
  std::vector<Patch> patches;
  int cost = 0;
  int gain = 0;
};

/// Multiple-choice knapsack: at most one patch per group, total cost <= W,
/// maximum total gain. Throws on negative W.
Selection knapsack_for_groups(int W, const std::vector<PatchGroup>& groups);

/// Every patch group of the even-aligned blocks inside find_boundary, with
/// cost and gain filled in.
std::vector<PatchGroup> candidate_groups(int d_k, int k, const CellSet& a_k, const ExpansionOptions& opt = {});

Selection select_patches_level(int W, int d_k, int k, const CellSet& a_k, const ExpansionOptions& opt = {});

struct LevelTrace {
  int level = 0;
  int budget_before = 0;
  int budget_after = 0;
  std::vector<Patch> selected;
  std::size_t base_cells_added = 0;
  std::size_t pairings_before = 0;
  std::size_t pairings_after = 0;  // of the tentative zone
  bool accepted = false;
};

struct ExpandedZone {
  AlertZone cells;
  AlertZone origin;
  int budget = 0;  // floor(alpha |A|)
  std::size_t pairings_before = 0;
  std::size_t pairings_after = 0;
  std::vector<LevelTrace> trace;

  std::size_t added() const { return cells.size() - origin.size(); }
  /// pairings_before / pairings_after; 1.0 when nothing changed.
  double improvement() const;
};

/// Pairings of the minimized token cover of a level-0 zone.
std::size_t zone_pairings(const GridSpec& grid, const AlertZone& zone, Encoding e);

/// Throws on alpha < 0, alpha > 1, a baseline encoding, a zone not at
/// level 0, or an empty zone.
ExpandedZone expand_zone(double alpha, const AlertZone& a, const GridSpec& grid, const ExpansionOptions& opt = {});

// Report: `key=value` summary lines followed by one `added=x,y` line per new
// base cell.
void write_report(std::ostream& os, const ExpandedZone& z, double alpha);

}  // namespace geofence::expansion
