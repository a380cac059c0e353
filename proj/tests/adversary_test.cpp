#include <gtest/gtest.h>

#include "rrsp/adversary.hpp"
#include "rrsp/random_instances.hpp"
#include "rrsp/reductions.hpp"
#include "support.hpp"

namespace rrsp {
namespace {

using test::make_instance;

Path pick_path(Rng& rng, const Instance& inst) {
  const auto paths = enumerate_st_paths(inst.graph);
  return paths[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(paths.size()) - 1))];
}

void expect_certified(const Instance& inst, const Path& x, const AdversaryResult& r) {
  EXPECT_TRUE(scenario_is_feasible(inst, r.scenario));
  const auto again = test::brute_recovery(inst, x, r.scenario);
  ASSERT_TRUE(again);
  EXPECT_EQ(*again, r.value);
  EXPECT_EQ(second_stage_cost(inst.graph, r.recovery.path, r.scenario), r.value);
  EXPECT_EQ(r.recovery.cost, r.value);
}

Instance diamond(Budget budget) {
  return make_instance(4,
                       {{0, 1, "0", "1", "2"}, {1, 3, "0", "1", "2"}, {0, 2, "0", "2", "1"}, {2, 3, "0", "1", "1"},
                        {0, 3, "0", "5", "0"}},
                       0, 3, {RecoveryKind::kIncl, 2}, std::move(budget));
}

TEST(WorstContinuous, ZeroBudgetIsNominal) {
  const Instance inst = diamond(Budget::continuous(0));
  const Path x{{0, 1}};
  for (const AdversaryResult& r : {worst_continuous(inst, x), worst_continuous_full(inst, x)}) {
    EXPECT_EQ(r.value, 2);
    EXPECT_EQ(r.scenario.support_size(), 0U);
  }
}

TEST(WorstContinuous, DiamondHandComputed) {
  // Recoveries cost 2 + d0 + d1, 3 + d2 + d3 and 5. With budget 3 the
  // adversary levels the two cheap routes at 4: d0 + d1 = 2, d2 + d3 = 1.
  const Instance inst = diamond(Budget::continuous(3));
  const Path x{{0, 1}};
  const AdversaryResult r = worst_continuous(inst, x);
  EXPECT_EQ(r.value, 4);
  expect_certified(inst, x, r);
  EXPECT_EQ(worst_continuous_full(inst, x).value, 4);

  const Instance big = diamond(Budget::continuous(10));
  EXPECT_EQ(worst_continuous(big, x).value, 5);
  EXPECT_EQ(worst_continuous_full(big, x).value, 5);
}

TEST(WorstContinuous, HpWalkHittingAllChains) {
  for (int n = 2; n <= 4; ++n) {
    SourceDigraph chain{n, {}};
    std::vector<int> order;
    for (int v = 0; v < n; ++v) order.push_back(v);
    for (int v = 0; v + 1 < n; ++v) chain.arcs.push_back({v, v + 1});
    for (auto kind : {RecoveryKind::kIncl, RecoveryKind::kExcl, RecoveryKind::kSym}) {
      const HpReduction red = reduce_hp_continuous(chain, kind);
      const Path x = column_walk_path(red.meta, order);
      const AdversaryResult r = worst_continuous(red.instance, x);
      EXPECT_EQ(r.value, Rational(1, n));
      EXPECT_TRUE(scenario_is_feasible(red.instance, r.scenario));
      if (n <= 3) EXPECT_EQ(worst_continuous_full(red.instance, x).value, Rational(1, n));
    }
  }
}

TEST(WorstContinuous, HpWalkMissingAChain) {
  const HpReduction red = reduce_hp_continuous(SourceDigraph{3, {{0, 1}, {1, 2}}}, RecoveryKind::kIncl);
  const std::vector<int> columns = {0, 1, 1};
  const Path x = column_walk_path(red.meta, columns);
  EXPECT_EQ(worst_continuous(red.instance, x).value, Rational(1, 2));
  EXPECT_EQ(worst_continuous_full(red.instance, x).value, Rational(1, 2));
}

TEST(WorstContinuous, MatchesFullEnumeration) {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int nodes = static_cast<int>(rng.uniform(2, 8));
    const int arcs = static_cast<int>(rng.uniform(std::max(nodes - 1, 3), 14));
    const Instance inst = random_instance(rng, {nodes, arcs}, BudgetKind::kContinuous);
    const Path x = pick_path(rng, inst);
    const AdversaryResult fast = worst_continuous(inst, x);
    const AdversaryResult full = worst_continuous_full(inst, x);
    EXPECT_EQ(fast.value, full.value);
    expect_certified(inst, x, fast);
    expect_certified(inst, x, full);
  }
}

TEST(WorstContinuous, MonotoneInBudget) {
  Rng rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_instance(rng, {7, 13}, BudgetKind::kContinuous);
    const Path x = pick_path(rng, inst);
    Rational previous(-1);
    for (const Rational& g : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
      inst.budget = Budget::continuous(g);
      const Rational v = worst_continuous(inst, x).value;
      EXPECT_GE(v, previous);
      previous = v;
    }
  }
}

TEST(WorstContinuous, CutoffStopsEarly) {
  const Instance inst = diamond(Budget::continuous(3));
  const Path x{{0, 1}};
  AdversaryOptions opt;
  opt.cutoff = Rational(3);
  const AdversaryResult r = worst_continuous(inst, x, opt);
  EXPECT_TRUE(r.cut_off);
  EXPECT_GE(r.value, 3);
  EXPECT_LE(r.value, 4);
  EXPECT_TRUE(scenario_is_feasible(inst, r.scenario));
  opt.cutoff = Rational(100);
  const AdversaryResult full = worst_continuous(inst, x, opt);
  EXPECT_FALSE(full.cut_off);
  EXPECT_EQ(full.value, 4);
}

TEST(WorstContinuous, PoolCapSignals) {
  const Instance inst = diamond(Budget::continuous(3));
  AdversaryOptions opt;
  opt.pool_cap = 1;
  EXPECT_THROW(worst_continuous(inst, Path{{0, 1}}, opt), CapExceeded);
}

TEST(WorstDiscrete, ZeroBudgetIsNominal) {
  const Instance inst = diamond(Budget::discrete(0));
  const Path x{{0, 1}};
  EXPECT_EQ(worst_discrete(inst, x).value, 2);
  EXPECT_EQ(worst_discrete_exhaustive(inst, x).value, 2);
}

TEST(WorstDiscrete, DiamondHandComputed) {
  // One raised arc: best is raising arc 0 or 1 (route 1 costs 4, route 2
  // costs 3) -> 3. Two raised arcs: raise one arc on each cheap route -> 4.
  const Instance one = diamond(Budget::discrete(1));
  const Path x{{0, 1}};
  const AdversaryResult r1 = worst_discrete(one, x);
  EXPECT_EQ(r1.value, 3);
  EXPECT_EQ(r1.scenario.entries().begin()->first, 0);  // smallest subset wins ties
  expect_certified(one, x, r1);
  const Instance two = diamond(Budget::discrete(2));
  EXPECT_EQ(worst_discrete(two, x).value, 4);
  EXPECT_EQ(worst_discrete_exhaustive(two, x).value, 4);
}

TEST(WorstDiscrete, HpInstance) {
  const SourceDigraph chain{3, {{0, 1}, {1, 2}}};
  const HpReduction red = reduce_hp_discrete(chain, RecoveryKind::kIncl);
  const std::vector<int> order = {0, 1, 2};
  EXPECT_EQ(worst_discrete(red.instance, column_walk_path(red.meta, order)).value, 0);
  const std::vector<int> missing = {0, 1, 1};
  EXPECT_EQ(worst_discrete(red.instance, column_walk_path(red.meta, missing)).value, 1);

  const HpReduction star = reduce_hp_discrete(SourceDigraph{3, {{0, 1}, {0, 2}}}, RecoveryKind::kIncl);
  for (const Path& x : enumerate_st_paths(star.instance.graph)) {
    EXPECT_EQ(worst_discrete(star.instance, x).value, 1);
  }
}

TEST(WorstDiscrete, MatchesExhaustive) {
  Rng rng(1717);
  for (int trial = 0; trial < 150; ++trial) {
    const int nodes = static_cast<int>(rng.uniform(2, 8));
    const int arcs = static_cast<int>(rng.uniform(std::max(nodes - 1, 3), 12));
    const Instance inst = random_instance(rng, {nodes, arcs}, BudgetKind::kDiscrete);
    const Path x = pick_path(rng, inst);
    const AdversaryResult fast = worst_discrete(inst, x);
    const AdversaryResult slow = worst_discrete_exhaustive(inst, x);
    EXPECT_EQ(fast.value, slow.value);
    expect_certified(inst, x, fast);
  }
}

TEST(WorstDiscrete, MidpointsNeverBeatExtremes) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = random_instance(rng, {6, 10}, BudgetKind::kDiscrete);
    const Path x = pick_path(rng, inst);
    const Rational extreme = worst_discrete(inst, x).value;
    std::vector<ArcId> uncertain;
    for (const Arc& a : inst.graph.arcs()) {
      if (a.deviation_cap > 0) uncertain.push_back(a.id);
    }
    const std::size_t u = uncertain.size();
    for (std::uint32_t mask = 0; mask < (1U << u); ++mask) {
      if (std::popcount(mask) > inst.budget.gamma_d) continue;
      Scenario s;
      for (std::size_t i = 0; i < u; ++i) {
        if (mask >> i & 1U) s.set(uncertain[i], inst.graph.arc_by_id(uncertain[i]).deviation_cap / 2);
      }
      EXPECT_LE(*test::brute_recovery(inst, x, s), extreme);
    }
  }
}

TEST(WorstDiscrete, MonotoneInBudget) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_instance(rng, {7, 12}, BudgetKind::kDiscrete);
    const Path x = pick_path(rng, inst);
    Rational previous(-1);
    for (int g = 0; g <= 3; ++g) {
      inst.budget = Budget::discrete(g);
      const Rational v = worst_discrete(inst, x).value;
      EXPECT_GE(v, previous);
      previous = v;
    }
  }
}

TEST(WorstDiscrete, SubsetCapSignals) {
  const Instance inst = diamond(Budget::discrete(2));
  AdversaryOptions opt;
  opt.subset_cap = 3;
  EXPECT_THROW(worst_discrete(inst, Path{{0, 1}}, opt), CapExceeded);
}

TEST(Neighborhood, EnumerationFiltersAllPaths) {
  const Instance inst = diamond(Budget::continuous(0));
  const auto all = enumerate_neighborhood(inst, Path{{0, 1}});
  ASSERT_EQ(all.size(), 3U);
  Instance tight = inst;
  tight.rule = {RecoveryKind::kIncl, 1};
  const auto some = enumerate_neighborhood(tight, Path{{0, 1}});
  ASSERT_EQ(some.size(), 2U);
  EXPECT_EQ(some[0].arc_ids, (std::vector<ArcId>{0, 1}));
  EXPECT_EQ(some[1].arc_ids, (std::vector<ArcId>{4}));
}

}  // namespace
}  // namespace rrsp
