#include <gtest/gtest.h>

#include <set>

#include "corpus.hpp"
#include "rrsp/reductions.hpp"
#include "support.hpp"

namespace rrsp {
namespace {

constexpr RecoveryKind kKinds[] = {RecoveryKind::kIncl, RecoveryKind::kExcl, RecoveryKind::kSym};

std::vector<bool> assignment_of(std::uint32_t mask, int n) {
  std::vector<bool> a(n);
  for (int i = 0; i < n; ++i) a[i] = (mask >> i) & 1U;
  return a;
}

bool role_is(const Arc& a, ArcRole r) { return a.role && *a.role == r; }

TEST(HpReduction, ChainOfTwoCounts) {
  const HpReduction r = reduce_hp_continuous(SourceDigraph{2, {{0, 1}}}, RecoveryKind::kIncl);
  const Digraph& g = r.instance.graph;
  EXPECT_EQ(g.node_count(), 10);
  EXPECT_EQ(g.arc_count(), 11U);
  ASSERT_EQ(r.meta.vertical_paths.size(), 2U);
  for (const auto& vp : r.meta.vertical_paths) EXPECT_EQ(vp.size(), 5U);
  EXPECT_EQ(r.meta.diagonal_arcs.size(), 1U);
  EXPECT_EQ(r.meta.big_m, 2);
  EXPECT_EQ(r.meta.threshold, Rational(1, 2));
  EXPECT_EQ(r.meta.k, 4);
}

TEST(HpReduction, InvariantsOnAllThreeNodeDigraphs) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < 3; ++u) {
    for (int v = 0; v < 3; ++v) {
      if (u != v) pairs.push_back({u, v});
    }
  }
  for (std::uint32_t mask = 0; mask < 64; ++mask) {
    SourceDigraph src{3, {}};
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (mask >> i & 1U) src.arcs.push_back(pairs[i]);
    }
    for (auto kind : kKinds) {
      for (bool discrete : {false, true}) {
        const HpReduction r = discrete ? reduce_hp_discrete(src, kind) : reduce_hp_continuous(src, kind);
        const Instance& inst = r.instance;
        const int n = 3;
        EXPECT_TRUE(validate_instance(inst).empty());
        EXPECT_EQ(inst.graph.node_count(), 2 * n * n + 2);
        EXPECT_EQ(inst.rule.k, kind == RecoveryKind::kSym ? 4 * n : 2 * n);
        EXPECT_EQ(r.meta.diagonal_arcs.size(), static_cast<std::size_t>((n - 1)) * src.arcs.size());
        std::set<ArcId> used;
        for (const auto& vp : r.meta.vertical_paths) {
          EXPECT_EQ(vp.size(), static_cast<std::size_t>(2 * n + 1));
          EXPECT_TRUE(is_st_path(inst.graph, Path{vp}));
          for (ArcId id : vp) EXPECT_TRUE(used.insert(id).second);
        }
        // Layered: with s at layer 0 and t at layer 2n+1 every arc climbs one layer.
        auto layer = [&](NodeId v) {
          if (v == inst.graph.source()) return 0;
          if (v == inst.graph.sink()) return 2 * n + 1;
          return (v - 1) / n + 1;
        };
        for (const Arc& a : inst.graph.arcs()) {
          EXPECT_EQ(layer(a.head), layer(a.tail) + 1);
          EXPECT_EQ(a.first_stage_cost, 0);
        }
        for (const DiagonalArc& d : r.meta.diagonal_arcs) {
          const Arc& a = inst.graph.arc_by_id(d.id);
          EXPECT_TRUE(role_is(a, ArcRole::kDiagonal));
          EXPECT_EQ(layer(a.tail), 2 * d.layer);
          EXPECT_EQ(a.nominal, discrete ? 1 : 2);
          EXPECT_EQ(a.deviation_cap, 0);
        }
        ASSERT_EQ(r.meta.dashed_arcs.size(), 3U);
        for (ArcId id : r.meta.dashed_arcs) {
          const Arc& a = inst.graph.arc_by_id(id);
          EXPECT_EQ(a.tail, inst.graph.source());
          EXPECT_EQ(a.nominal, 0);
          EXPECT_EQ(a.deviation_cap, discrete ? 1 : 2);
        }
        if (discrete) {
          EXPECT_EQ(inst.budget.kind, BudgetKind::kDiscrete);
          EXPECT_EQ(inst.budget.gamma_d, n - 1);
          EXPECT_EQ(r.meta.threshold, 0);
          for (const auto& vp : r.meta.vertical_paths) {
            for (std::size_t i = 1; i < vp.size(); ++i) EXPECT_EQ(inst.graph.arc_by_id(vp[i]).deviation_cap, 0);
          }
        } else {
          EXPECT_EQ(inst.budget.gamma_c, 1);
          EXPECT_EQ(r.meta.threshold, Rational(1, 3));
          for (const auto& vp : r.meta.vertical_paths) {
            for (ArcId id : vp) EXPECT_EQ(inst.graph.arc_by_id(id).deviation_cap, 2);
          }
        }
      }
    }
  }
}

TEST(HpReduction, LargerBudgetRaisesM) {
  const HpReduction r = reduce_hp_continuous(SourceDigraph{2, {{0, 1}}}, RecoveryKind::kIncl, Rational(5, 2));
  EXPECT_EQ(r.meta.big_m, 3);
  EXPECT_EQ(r.meta.threshold, Rational(5, 4));
}

TEST(HpReduction, RejectsBadInput) {
  EXPECT_THROW(reduce_hp_continuous(SourceDigraph{1, {}}, RecoveryKind::kIncl), std::invalid_argument);
  EXPECT_THROW(reduce_hp_discrete(SourceDigraph{3, {{0, 0}}}, RecoveryKind::kIncl), std::invalid_argument);
  EXPECT_THROW(reduce_hp_discrete(SourceDigraph{3, {{0, 1}, {0, 1}}}, RecoveryKind::kIncl), std::invalid_argument);
  EXPECT_THROW(reduce_hp_discrete(SourceDigraph{3, {{0, 3}}}, RecoveryKind::kIncl), std::invalid_argument);
}

TEST(HpReduction, ColumnWalkNeedsDiagonals) {
  const HpReduction r = reduce_hp_continuous(SourceDigraph{3, {{0, 1}}}, RecoveryKind::kIncl);
  const std::vector<int> ok = {0, 1, 1};
  EXPECT_TRUE(is_st_path(r.instance.graph, column_walk_path(r.meta, ok)));
  const std::vector<int> bad = {1, 0, 0};
  EXPECT_THROW(column_walk_path(r.meta, bad), std::invalid_argument);
}

class SatReductionTest : public ::testing::TestWithParam<std::tuple<int, int, RecoveryKind>> {};

TEST_P(SatReductionTest, Invariants) {
  const auto [formula_index, q, kind] = GetParam();
  const auto corpus = test::formula_corpus();
  const CnfFormula& f = corpus[formula_index].formula;
  if (q > f.variable_count) GTEST_SKIP();
  const SatReduction red = reduce_max3sat(f, q, kind);
  const Instance& inst = red.instance;
  const SatReductionMeta& meta = red.meta;
  const int n = f.variable_count;
  const int m = static_cast<int>(f.clauses.size());

  EXPECT_TRUE(validate_instance(inst).empty());
  EXPECT_EQ(inst.budget.kind, BudgetKind::kContinuous);
  EXPECT_EQ(inst.budget.gamma_c, 1);
  int tuples = 1;
  for (int i = 0; i < q; ++i) tuples *= m;
  ASSERT_EQ(meta.gadgets.size(), static_cast<std::size_t>(tuples));

  // Costs per role.
  for (const Arc& a : inst.graph.arcs()) {
    ASSERT_TRUE(a.role);
    switch (*a.role) {
      case ArcRole::kSolidNormal:
        EXPECT_EQ(a.first_stage_cost, 0);
        EXPECT_EQ(a.nominal, 2);
        EXPECT_EQ(a.deviation_cap, 0);
        break;
      case ArcRole::kSolidFat:
        EXPECT_EQ(a.first_stage_cost, 0);
        EXPECT_EQ(a.nominal, 0);
        EXPECT_EQ(a.deviation_cap, 0);
        break;
      case ArcRole::kDotted:
        EXPECT_EQ(a.first_stage_cost, 2);
        EXPECT_EQ(a.nominal, 0);
        EXPECT_EQ(a.deviation_cap, 0);
        break;
      case ArcRole::kDashed:
        EXPECT_EQ(a.first_stage_cost, 2);
        EXPECT_EQ(a.nominal, 0);
        EXPECT_EQ(a.deviation_cap, 1);
        break;
      default:
        ADD_FAILURE() << "unexpected role";
    }
  }

  // Literal paths: one per non-contradictory tuple, 2n+1 arcs, q fat arcs.
  int pow3 = 1;
  for (int i = 0; i < q; ++i) pow3 *= 3;
  for (std::size_t g = 0; g < meta.gadgets.size(); ++g) {
    const ClauseGadget& gadget = meta.gadgets[g];
    EXPECT_LE(gadget.literal_paths.size(), static_cast<std::size_t>(pow3));
    std::size_t expected_paths = 0;
    std::vector<std::size_t> pick(q, 0);
    for (;;) {
      bool contradictory = false;
      for (int a = 0; a < q; ++a) {
        for (int b = a + 1; b < q; ++b) {
          contradictory = contradictory ||
                          f.clauses[gadget.clauses[a]][pick[a]] == -f.clauses[gadget.clauses[b]][pick[b]];
        }
      }
      if (!contradictory) ++expected_paths;
      int pos = q - 1;
      while (pos >= 0 && ++pick[pos] == f.clauses[gadget.clauses[pos]].size()) pick[pos--] = 0;
      if (pos < 0) break;
    }
    EXPECT_EQ(gadget.literal_paths.size(), expected_paths);

    std::set<std::vector<ArcId>> literal_paths;
    for (std::size_t p = 0; p < gadget.literal_paths.size(); ++p) {
      const LiteralPath& lp = gadget.literal_paths[p];
      EXPECT_EQ(lp.arcs.size(), static_cast<std::size_t>(2 * n + 1));
      int fat = 0;
      for (ArcId id : lp.arcs) fat += role_is(inst.graph.arc_by_id(id), ArcRole::kSolidFat) ? 1 : 0;
      EXPECT_EQ(fat, q);
      for (int c = 0; c < q; ++c) EXPECT_EQ(meta.literal_arc(g, p, static_cast<std::size_t>(c)), lp.literal_arcs[c]);
      literal_paths.insert(lp.arcs);
    }

    // Fat/dotted paths from the gadget source to its sink are exactly the
    // literal paths: no hybrid zero-nominal routes.
    const Digraph sub(inst.graph.node_count(),
                      [&] {
                        std::vector<Arc> keep;
                        for (const Arc& a : inst.graph.arcs()) {
                          if (role_is(a, ArcRole::kSolidFat) || role_is(a, ArcRole::kDotted)) keep.push_back(a);
                        }
                        return keep;
                      }(),
                      gadget.source, gadget.sink);
    std::set<std::vector<ArcId>> found;
    for (const Path& p : enumerate_st_paths(sub)) found.insert(p.arc_ids);
    EXPECT_EQ(found, literal_paths);
  }

  // Solid-only paths correspond to assignments.
  const Digraph solid = inst.graph.filtered(
      [](const Arc& a) { return role_is(a, ArcRole::kSolidNormal) || role_is(a, ArcRole::kSolidFat); });
  const auto solid_paths = enumerate_st_paths(solid);
  EXPECT_EQ(solid_paths.size(), std::size_t{1} << n);
  std::set<std::vector<ArcId>> encoded;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const auto a = assignment_of(mask, n);
    const Path x = meta.codec.encode(a);
    EXPECT_TRUE(is_st_path(inst.graph, x));
    EXPECT_EQ(meta.codec.decode(x), a);
    encoded.insert(x.arc_ids);
    if (kind != RecoveryKind::kIncl) EXPECT_EQ(x.size(), static_cast<std::size_t>(n * *meta.r + 1));
    const auto xs = test::arc_set(x);
    for (const ClauseGadget& gadget : meta.gadgets) {
      for (const LiteralPath& lp : gadget.literal_paths) {
        std::size_t shared = 0, true_components = 0;
        for (ArcId id : lp.arcs) shared += xs.count(id);
        for (int lit : lp.literals) true_components += literal_true(lit, a) ? 1 : 0;
        EXPECT_EQ(shared, true_components);
      }
    }
  }
  for (const Path& p : solid_paths) EXPECT_TRUE(encoded.count(p.arc_ids));
  EXPECT_FALSE(meta.codec.decode(Path{{meta.gadgets[0].dashed_arc}}));

  // k settings.
  if (kind == RecoveryKind::kIncl) {
    EXPECT_FALSE(meta.r);
    EXPECT_EQ(meta.k, 2 * n + 3 - q);
  } else {
    ASSERT_TRUE(meta.r);
    EXPECT_EQ(*meta.r, tuples * (q * pow3 + 1) + 1);
    EXPECT_EQ(meta.k, kind == RecoveryKind::kExcl ? n * *meta.r + 1 - q : (2 * n + 3) + (n * *meta.r + 1) - 2 * q);
  }
  EXPECT_EQ(inst.rule.k, meta.k);
}

std::string sat_param_name(const ::testing::TestParamInfo<SatReductionTest::ParamType>& info) {
  const auto [f, q, kind] = info.param;
  return "f" + std::to_string(f + 1) + "_q" + std::to_string(q) + "_" + std::string(to_string(kind));
}

INSTANTIATE_TEST_SUITE_P(Corpus, SatReductionTest,
                         ::testing::Combine(::testing::Range(0, 5), ::testing::Values(1, 2),
                                            ::testing::ValuesIn(kKinds)),
                         sat_param_name);

TEST(SatReduction, SingleVariableFormula) {
  const CnfFormula f{1, {{1}, {-1}}};
  const SatReduction red = reduce_max3sat(f, 1, RecoveryKind::kIncl);
  EXPECT_EQ(red.meta.gadgets.size(), 2U);
  EXPECT_EQ(enumerate_st_paths(red.instance.graph.filtered([](const Arc& a) {
              return a.role == ArcRole::kSolidNormal || a.role == ArcRole::kSolidFat;
            })).size(),
            2U);
}

TEST(SatReduction, RejectsPreconditionViolations) {
  auto message = [](const CnfFormula& f, int q) -> std::string {
    try {
      check_sat_reduction_input(f, q);
    } catch (const std::invalid_argument& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message({2, {{1, 2}, {-1}}}, 1).find("x2 never occurs negatively"), std::string::npos);
  EXPECT_NE(message({2, {{1, -1}, {2}, {-2}}}, 1).find("clause 1 contains variable x1 and its negation"),
            std::string::npos);
  EXPECT_NE(message({1, {{1}, {-1}}}, 2).find("q must"), std::string::npos);
  EXPECT_NE(message({2, {{1, 2}, {-1}, {-2}}}, 3).find("q must"), std::string::npos);
  EXPECT_NE(message({2, {{1, 2}, {-1}, {-2}}}, 0).find("q must"), std::string::npos);
  EXPECT_NE(message({2, {{1, 2, -1, 2}, {-2}}}, 1).find("clause 1"), std::string::npos);
  EXPECT_NE(message({2, {{1, 1}, {-1}, {2, -2}}}, 1).find("repeats"), std::string::npos);
  EXPECT_NE(message({1, {{1}, {-1}, {}}}, 1).find("clause 3"), std::string::npos);
  EXPECT_EQ(message({2, {{1, 2}, {-1}, {-2}}}, 2), "");
  EXPECT_THROW(reduce_max3sat({2, {{1, 2}}}, 1, RecoveryKind::kIncl), std::invalid_argument);
}

}  // namespace
}  // namespace rrsp
