#pragma once

// Seeded generators for test and demo instances. Draws avoid the standard
// distribution classes so a seed yields the same instance on every platform.

#include <cstdint>
#include <random>

#include "rrsp/graph.hpp"
#include "rrsp/reductions.hpp"

namespace rrsp {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [lo, hi]; requires lo <= hi.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  bool coin() { return uniform(0, 1) == 1; }
  // Uniform multiple of 1/denominator in [0, max_value].
  Rational grid(std::int64_t max_value, std::int64_t denominator);

 private:
  std::mt19937_64 engine_;
};

struct RandomDagOptions {
  int nodes = 6;                 // >= 2; node 0 is the source, nodes-1 the sink
  int arcs = 10;                 // >= nodes - 1 (a backbone path is always present)
  std::int64_t max_cost = 4;     // costs are multiples of 1/cost_denominator up to this
  std::int64_t cost_denominator = 2;
  bool zero_first_stage = false;
};

// Acyclic multigraph whose arcs all point from lower to higher node ids,
// containing the backbone 0 -> 1 -> ... -> nodes-1. Costs are drawn on a
// half-integer grid. Rule and budget are left for the caller to fill in.
Digraph random_dag(Rng& rng, const RandomDagOptions& options);

// random_dag plus a random rule (k in [0, max_k]) and a budget of the given
// kind (continuous gamma on the half-integer grid up to 3, discrete in [0, 3]).
Instance random_instance(Rng& rng, const RandomDagOptions& options, BudgetKind budget, int max_k = 6);

// Uniform random scenario within the instance's budget (deviation grid 1/2).
Scenario random_scenario(Rng& rng, const Instance& inst);

// Digraph on n nodes; each ordered pair (u, v), u != v, is an arc with the
// given probability numerator / denominator.
SourceDigraph random_source_digraph(Rng& rng, int n, int numerator = 1, int denominator = 2);

}  // namespace rrsp
