#pragma once

// Instance generators for the Hamiltonian-path and MAX-3SAT hardness
// constructions, with metadata describing their structure.

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rrsp/cnf.hpp"
#include "rrsp/graph.hpp"

namespace rrsp {

// Plain digraph (cycles allowed) with 0-based nodes, e.g. a Hamiltonian path
// input. Self-loops and repeated arcs are rejected by the generators.
struct SourceDigraph {
  int node_count = 0;
  std::vector<std::pair<int, int>> arcs;
};

// Throws std::invalid_argument for out-of-range nodes, self-loops or repeats.
void check_source_digraph(const SourceDigraph& g);

// Arc (v_from^{2j}, v_to^{2j+1}) for 1 <= layer = j <= n-1, columns 0-based.
struct DiagonalArc {
  int layer = 0;
  int from = 0;
  int to = 0;
  ArcId id = 0;
};

struct HpReductionMeta {
  int n = 0;
  BudgetKind budget = BudgetKind::kContinuous;
  std::vector<std::vector<ArcId>> vertical_paths;  // P_1..P_n, 2n+1 arcs each
  std::vector<ArcId> dashed_arcs;                  // (s, v_i^1)
  std::vector<DiagonalArc> diagonal_arcs;
  Rational threshold;  // gamma/n (continuous) or 0 (discrete)
  Rational big_m;      // diagonal cost; continuous variant only
  int k = 0;
};

struct HpReduction {
  Instance instance;
  HpReductionMeta meta;
};

// Layered graph: nodes v_i^j (i in [n], j in [2n]) plus s and t; n vertical
// s-t chains and one diagonal arc per source arc and even layer. All first
// stage costs are 0. Vertical arcs cost [0, M], diagonals [M, M] with M the
// smallest integer above gamma. k = 2n (incl, excl) or 4n (sym).
// Throws std::invalid_argument when n < 2.
HpReduction reduce_hp_continuous(const SourceDigraph& g, RecoveryKind kind, const Rational& gamma = Rational(1));

// Same topology; only the n arcs (s, v_i^1) are uncertain, in [0, 1];
// diagonals cost [1, 1]; discrete budget n - 1.
HpReduction reduce_hp_discrete(const SourceDigraph& g, RecoveryKind kind);

// First-stage path that stays in column columns[j] on layers 2j+1, 2j+2
// (one column per layer pair, so columns.size() == n). A Hamiltonian order
// gives a path touching every vertical chain. Throws std::invalid_argument if
// a needed diagonal arc does not exist.
Path column_walk_path(const HpReductionMeta& meta, std::span<const int> columns);

struct LiteralPath {
  std::vector<int> literals;        // one per tuple component
  std::vector<ArcId> arcs;          // gadget source to gadget sink, 2n+1 arcs
  std::vector<ArcId> literal_arcs;  // literal arc of each component
};

struct ClauseGadget {
  std::vector<int> clauses;  // 0-based clause index per tuple position
  NodeId source = 0;
  NodeId sink = 0;
  ArcId dashed_arc = 0;  // (s, gadget source), the only uncertain arcs
  ArcId exit_arc = 0;    // (gadget sink, t)
  std::vector<LiteralPath> literal_paths;
};

// Bijection between 0-1 assignments and solid-only s-t paths.
struct SolidPathCodec {
  ArcId entry_arc = 0;  // (s, u_1)
  // segments[i][1] is the route u_i -> u_{i+1} (or t) taken when x_{i+1} is
  // true, segments[i][0] when false.
  std::vector<std::array<std::vector<ArcId>, 2>> segments;

  Path encode(const std::vector<bool>& assignment) const;
  std::optional<std::vector<bool>> decode(const Path& path) const;
};

struct SatReductionMeta {
  int n = 0;
  int m = 0;
  int q = 0;
  std::vector<ClauseGadget> gadgets;  // clause tuples in lexicographic order
  SolidPathCodec codec;
  std::optional<int> r;  // segment length after arc splitting (excl, sym)
  int k = 0;

  ArcId literal_arc(std::size_t gadget, std::size_t path, std::size_t component) const {
    return gadgets.at(gadget).literal_paths.at(path).literal_arcs.at(component);
  }
};

struct SatReduction {
  Instance instance;
  SatReductionMeta meta;
};

// Throws std::invalid_argument naming the offending clause or variable.
// Requires 1 <= q <= n (so q < 2n), clauses of 1..3 distinct literals with no
// complementary pair, and every variable occurring in both polarities.
void check_sat_reduction_input(const CnfFormula& formula, int q);

// Clause-tuple gadget construction with continuous budget 1.
//   incl: k = 2n + 3 - q
//   excl: k = n r + 1 - q              with r = m^q (q 3^q + 1) + 1
//   sym:  k = (2n + 3) + (n r + 1) - 2q
// For excl and sym the first arc of every variable segment is split so each
// segment has exactly r arcs.
SatReduction reduce_max3sat(const CnfFormula& formula, int q, RecoveryKind kind);

}  // namespace rrsp
