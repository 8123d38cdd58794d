#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "balgraph/balance.hpp"
#include "balgraph/enumeration.hpp"
#include "test_support.hpp"

namespace balgraph {
namespace {

using testing::small_digraphs;

struct S3 {
  FiniteGroup g = make_group("symmetric:3");
  Element e(const char* name) const { return *g.find_element(name); }
  Element t12 = e("213"), t13 = e("321"), t23 = e("132");
};

TEST(WalkProductTest, EmptyWalkIsIdentity) {
  const S3 s;
  const Digraph d = testing::triangle();
  EXPECT_EQ(walk_product_edges(s.g, d, EdgeLabeling{Mode::flexible, {s.t12, s.t13, s.t23}}, ClosedWalk{}), s.g.identity());
  EXPECT_EQ(walk_product_full(s.g, d, FullLabeling{Mode::rigid, {s.t12, s.t12, s.t12}, {s.t13, s.t13, s.t13}}, ClosedWalk{}),
            s.g.identity());
}

TEST(WalkProductTest, OutAndBackCancels) {
  const S3 s;
  const Digraph d = testing::single_edge();
  const Element p = s.g.mul(s.t12, s.t13);
  const ClosedWalk w{{0, 1}, {{0, false}, {0, true}}};
  EXPECT_EQ(walk_product_edges(s.g, d, EdgeLabeling{Mode::flexible, {p}}, w), s.g.identity());
}

TEST(WalkProductTest, TriangleWithTrivialProduct) {
  const S3 s;
  const Element z = s.g.inv(s.g.mul(s.t12, s.t23));
  const ClosedWalk w{{0, 1, 2}, {{0, false}, {1, false}, {2, false}}};
  EXPECT_EQ(walk_product_edges(s.g, testing::triangle(), EdgeLabeling{Mode::rigid, {s.t12, s.t23, z}}, w), s.g.identity());
  EXPECT_NE(walk_product_edges(s.g, testing::triangle(), EdgeLabeling{Mode::rigid, {s.t12, s.t23, s.t12}}, w),
            s.g.identity());
}

TEST(WalkProductTest, FullOutAndBackIsApbpInverse) {
  const S3 s;
  const Digraph d = testing::single_edge();
  const ClosedWalk w{{0, 1}, {{0, false}, {0, true}}};
  for (const Element a : s.g.elements())
    for (const Element p : s.g.elements())
      for (const Element b : s.g.elements()) {
        const FullLabeling h{Mode::flexible, {a, b}, {p}};
        const Element expected = s.g.mul(s.g.mul(s.g.mul(a, p), b), s.g.inv(p));
        EXPECT_EQ(walk_product_full(s.g, d, h, w), expected);
        EXPECT_EQ(expected == s.g.identity(), s.g.mul(s.g.mul(a, p), b) == p);
      }
}

FullLabeling triangle_construction(const S3& s, Element a, Element x, Element y, Element z) {
  const FiniteGroup& g = s.g;
  auto m = [&](std::initializer_list<Element> xs) {
    Element acc = g.identity();
    for (Element v : xs) acc = g.mul(acc, v);
    return acc;
  };
  const Element xi = g.inv(x), yi = g.inv(y);
  return FullLabeling{Mode::flexible,
                      {a, m({xi, a, x}), m({yi, xi, a, x, y})},
                      {m({a, x}), m({xi, a, x, y}), m({yi, xi, a, x, y, z})}};
}

TEST(WalkProductTest, TriangleConstructionPerimeterIsIdentity) {
  const S3 s;
  const Element z = s.g.inv(s.g.mul(s.t13, s.t23));
  const FullLabeling h = triangle_construction(s, s.t12, s.t13, s.t23, z);
  const ClosedWalk w{{0, 1, 2}, {{0, false}, {1, false}, {2, false}}};
  EXPECT_EQ(walk_product_full(s.g, testing::triangle(), h, w), s.g.identity());
}

TEST(WalkProductTest, RejectsBadWalks) {
  const S3 s;
  const Digraph d = testing::triangle();
  const EdgeLabeling f{Mode::rigid, {s.t12, s.t12, s.t12}};
  EXPECT_THROW(walk_product_edges(s.g, d, f, ClosedWalk{{0, 2}, {{0, false}, {1, false}}}), WalkError);
  EXPECT_THROW(walk_product_edges(s.g, d, f, ClosedWalk{{0, 1}, {{0, false}, {0, true}}}), WalkError);
  EXPECT_THROW(walk_product_edges(s.g, d, EdgeLabeling{Mode::flexible, f.values},
                                  ClosedWalk{{0, 1, 0, 1}, {{0, false}, {0, true}, {0, false}, {0, true}}}),
               WalkError);
  EXPECT_THROW(walk_product_edges(s.g, d, f, ClosedWalk{{0}, {{7, false}}}), WalkError);
}

TEST(ClosedWalkTest, NoEdgesNoWalks) {
  EXPECT_TRUE(all_closed_walks(Digraph(1, {}), Mode::flexible).empty());
  EXPECT_TRUE(all_closed_walks(Digraph(1, {}), Mode::rigid).empty());
}

TEST(ClosedWalkTest, SingleLoop) {
  const Digraph d(1, {{0, 0}});
  const auto rigid = all_closed_walks(d, Mode::rigid);
  ASSERT_EQ(rigid.size(), 1u);
  EXPECT_EQ(rigid[0], (ClosedWalk{{0}, {{0, false}}}));
  // Flexible: e, ē, and e·ē (its reversal ē·e is a rotation of it).
  EXPECT_EQ(all_closed_walks(d, Mode::flexible).size(), 3u);
}

TEST(ClosedWalkTest, NoRigidCycleThroughBothEndsOfTheStrongPair) {
  const Digraph d = testing::strong_but_no_common_cycle();
  const auto walks = all_closed_walks(d, Mode::rigid);
  EXPECT_FALSE(walks.empty());
  for (const auto& w : walks) EXPECT_FALSE(w.contains(0) && w.contains(3));
  // x and y each lie on some rigid cycle.
  EXPECT_FALSE(all_closed_walks(d, Mode::rigid, Vertex{0}).empty());
  EXPECT_FALSE(all_closed_walks(d, Mode::rigid, Vertex{3}).empty());
}

TEST(ClosedWalkTest, BaseFiltersByVisitedVertex) {
  const Digraph d(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  for (const auto& w : all_closed_walks(d, Mode::rigid, Vertex{2})) EXPECT_TRUE(w.contains(2));
  EXPECT_EQ(all_closed_walks(d, Mode::rigid, Vertex{2}).size(), 2u);
  EXPECT_EQ(all_closed_walks(d, Mode::rigid).size(), 3u);
}

// Counts closed sequences of distinct edge uses directly: every ordered
// sequence that is incident and returns to its start. A rotation class of
// length L corresponds to exactly L such sequences.
std::size_t count_closed_sequences(const Digraph& d, Mode mode) {
  std::vector<EdgeUse> uses;
  for (EdgeId id = 0; id < d.edge_count(); ++id) {
    uses.push_back({id, false});
    if (mode == Mode::flexible) uses.push_back({id, true});
  }
  auto from = [&](EdgeUse u) { return u.reversed ? d.edge(u.edge).endpoint : d.edge(u.edge).origin; };
  auto to = [&](EdgeUse u) { return u.reversed ? d.edge(u.edge).origin : d.edge(u.edge).endpoint; };
  std::size_t total = 0;
  std::vector<bool> used(uses.size(), false);
  std::vector<EdgeUse> seq;
  auto grow = [&](auto&& self) -> void {
    if (!seq.empty() && to(seq.back()) == from(seq.front())) ++total;
    for (std::size_t i = 0; i < uses.size(); ++i) {
      if (used[i] || (!seq.empty() && from(uses[i]) != to(seq.back()))) continue;
      used[i] = true;
      seq.push_back(uses[i]);
      self(self);
      seq.pop_back();
      used[i] = false;
    }
  };
  grow(grow);
  return total;
}

TEST(ClosedWalkTest, EnumerationMatchesSequenceCount) {
  for (const Digraph& d : small_digraphs(3, 3)) {
    for (Mode mode : {Mode::flexible, Mode::rigid}) {
      std::size_t weighted = 0;
      std::set<std::vector<EdgeUse>> distinct;
      for (const auto& w : all_closed_walks(d, mode)) {
        validate_walk(d, mode, w);
        weighted += w.length();
        EXPECT_TRUE(distinct.insert(w.uses).second);
        for (std::size_t j = 1; j < w.uses.size(); ++j) {
          auto key = [&](EdgeUse u) {
            return std::tuple(u.reversed ? d.edge(u.edge).endpoint : d.edge(u.edge).origin, u.edge, u.reversed);
          };
          EXPECT_LT(key(w.uses[0]), key(w.uses[j]));
        }
        if (mode == Mode::rigid) {
          EXPECT_LE(w.length(), d.edge_count());
        } else {
          EXPECT_LE(w.length(), 2 * d.edge_count());
        }
      }
      EXPECT_EQ(weighted, count_closed_sequences(d, mode)) << format_graph(d) << to_string(mode);
    }
  }
}

TEST(BalanceTest, IdentityLabelingIsBalanced) {
  const S3 s;
  for (const Digraph& d : small_digraphs(3, 3)) {
    for (Mode mode : {Mode::flexible, Mode::rigid}) {
      EXPECT_TRUE(is_balanced_edges(s.g, d, EdgeLabeling{mode, std::vector<Element>(d.edge_count())}));
      EXPECT_TRUE(is_balanced_full(
          s.g, d, FullLabeling{mode, std::vector<Element>(d.vertex_count()), std::vector<Element>(d.edge_count())}));
    }
  }
}

TEST(BalanceTest, LoopForcesIdentity) {
  const S3 s;
  const Digraph d(1, {{0, 0}});
  EXPECT_FALSE(is_balanced_edges(s.g, d, EdgeLabeling{Mode::flexible, {s.t12}}));
  EXPECT_FALSE(is_balanced_edges(s.g, d, EdgeLabeling{Mode::rigid, {s.t12}}));
}

TEST(BalanceTest, ParallelEdgesMustAgree) {
  const S3 s;
  const Digraph d(2, {{0, 1}, {0, 1}});
  for (const Element p : s.g.elements())
    for (const Element q : s.g.elements())
      EXPECT_EQ(is_balanced_edges(s.g, d, EdgeLabeling{Mode::flexible, {p, q}}), p == q);
  // Rigid: the two parallel edges never form a cycle.
  EXPECT_TRUE(is_balanced_edges(s.g, d, EdgeLabeling{Mode::rigid, {s.t12, s.t13}}));
}

TEST(BalanceTest, SingleVertexFullIsAlwaysBalanced) {
  const S3 s;
  for (const Element a : s.g.elements()) {
    EXPECT_TRUE(is_balanced_full(s.g, Digraph(1, {}), FullLabeling{Mode::flexible, {a}, {}}));
    EXPECT_TRUE(is_balanced_full(s.g, Digraph(1, {}), FullLabeling{Mode::rigid, {a}, {}}));
  }
}

TEST(BalanceTest, SingleEdgeFullIffApbEqualsP) {
  const S3 s;
  const Digraph d = testing::single_edge();
  for (const Element a : s.g.elements())
    for (const Element p : s.g.elements())
      for (const Element b : s.g.elements())
        EXPECT_EQ(is_balanced_full(s.g, d, FullLabeling{Mode::flexible, {a, b}, {p}}),
                  s.g.mul(s.g.mul(a, p), b) == p);
}

TEST(BalanceTest, TriangleConstructionIsBalanced) {
  const S3 s;
  const Element z = s.g.inv(s.g.mul(s.t13, s.t23));
  EXPECT_TRUE(is_balanced_full(s.g, testing::triangle(), triangle_construction(s, s.t12, s.t13, s.t23, z)));
  // A non-involution at the base breaks it.
  const Element rot = s.g.mul(s.t12, s.t13);
  EXPECT_FALSE(is_balanced_full(s.g, testing::triangle(), triangle_construction(s, rot, s.t13, s.t23, z)));
}

TEST(BalanceTest, CheckerRejectsMismatchedLabelings) {
  const S3 s;
  const BalanceChecker checker(s.g, testing::triangle(), Target::edges, Mode::flexible);
  EXPECT_THROW(checker.is_balanced(Labeling{EdgeLabeling{Mode::rigid, {s.t12, s.t12, s.t12}}}), std::invalid_argument);
  EXPECT_THROW(checker.is_balanced(Labeling{EdgeLabeling{Mode::flexible, {s.t12}}}), std::invalid_argument);
  EXPECT_THROW(checker.is_balanced(Labeling{EdgeLabeling{Mode::flexible, {Element{9}, s.t12, s.t12}}}),
               std::invalid_argument);
}

TEST(OracleTest, SpotValues) {
  const FiniteGroup z2 = make_group("cyclic:2");
  for (const char* spec : {"cyclic:2", "symmetric:3", "quaternion:8"}) {
    EXPECT_EQ(brute_force_count(make_group(spec), Digraph(1, {}), Target::edges, Mode::flexible), 1);
  }
  EXPECT_EQ(brute_force_count(z2, testing::triangle(), Target::edges, Mode::flexible), 4);
  EXPECT_EQ(brute_force_count(z2, testing::triangle(), Target::full, Mode::flexible), 8);
  EXPECT_EQ(brute_force_count(make_group("cyclic:3"), testing::single_edge(), Target::edges, Mode::rigid), 3);
  EXPECT_EQ(brute_force_count(make_group("cyclic:3"), testing::single_edge(), Target::full, Mode::rigid), 27);
}

TEST(OracleTest, AgreesWithPlainEnumerationOfCandidates) {
  // Pruned search vs. testing every candidate with the checker.
  const FiniteGroup g = make_group("symmetric:3");
  for (const Digraph& d : small_digraphs(2, 2)) {
    for (Target target : {Target::edges, Target::full}) {
      for (Mode mode : {Mode::flexible, Mode::rigid}) {
        const BalanceChecker checker(g, d, target, mode);
        std::set<std::vector<Element>> plain, pruned;
        std::vector<Element> slots(checker.slot_count());
        auto odometer = [&](auto&& self, std::size_t k) -> void {
          if (k == slots.size()) {
            if (checker.is_balanced(slots)) plain.insert(slots);
            return;
          }
          for (const Element x : g.elements()) {
            slots[k] = x;
            self(self, k + 1);
          }
        };
        odometer(odometer, 0);
        brute_force_for_each(g, d, target, mode, [&](std::span<const Element> s) {
          pruned.insert(std::vector<Element>(s.begin(), s.end()));
        });
        EXPECT_EQ(plain, pruned) << format_graph(d);
      }
    }
  }
}

TEST(OracleTest, BudgetExceededReportsRequiredCandidates) {
  const FiniteGroup g = make_group("symmetric:3");
  try {
    brute_force_count(g, testing::strong_but_no_common_cycle(), Target::full, Mode::flexible);
    FAIL() << "expected OracleBudgetExceeded";
  } catch (const OracleBudgetExceeded& e) {
    EXPECT_EQ(e.required(), 10077696);  // 6^9
    EXPECT_EQ(e.budget(), kDefaultOracleBudget);
    EXPECT_NE(std::string(e.what()).find("10077696"), std::string::npos);
  }
  EXPECT_THROW(brute_force_count(g, testing::triangle(), Target::edges, Mode::flexible, 215), OracleBudgetExceeded);
  EXPECT_EQ(brute_force_count(g, testing::triangle(), Target::edges, Mode::flexible, 216), 36);
}

TEST(BalancePropertyTest, ReversingAnEdgeAndInvertingItsLabel) {
  const FiniteGroup g = make_group("symmetric:3");
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> pick(0, 5);
  for (const Digraph& d : small_digraphs(3, 3)) {
    if (d.edge_count() == 0) continue;
    const BalanceChecker before(g, d, Target::edges, Mode::flexible);
    for (int trial = 0; trial < 6; ++trial) {
      // Half the trials start from a balanced labeling so both outcomes occur.
      std::vector<Element> values;
      if (trial % 2) {
        values = std::get<EdgeLabeling>(sample_uniform(g, d, Target::edges, Mode::flexible, rng())).values;
      } else {
        for (std::size_t i = 0; i < d.edge_count(); ++i) values.push_back(Element{pick(rng)});
      }
      const EdgeId flip = static_cast<EdgeId>(rng() % d.edge_count());
      auto flipped_values = values;
      flipped_values[flip] = g.inv(values[flip]);
      const Digraph flipped = d.with_reversed_edge(flip);
      EXPECT_EQ(before.is_balanced(values),
                is_balanced_edges(g, flipped, EdgeLabeling{Mode::flexible, flipped_values}));
    }
  }
}

TEST(BalancePropertyTest, AddingEdgesNeverIncreasesFlexibleEdgeCount) {
  const FiniteGroup g = make_group("cyclic:3");
  for (const Digraph& d : small_digraphs(3, 3)) {
    const BigInt base = brute_force_count(g, d, Target::edges, Mode::flexible);
    for (Vertex a = 0; a < d.vertex_count(); ++a)
      for (Vertex b = 0; b < d.vertex_count(); ++b) {
        auto edges = d.edges();
        edges.push_back({a, b});
        const Digraph bigger(d.vertex_count(), edges);
        const BigInt after = brute_force_count(g, bigger, Target::edges, Mode::flexible);
        EXPECT_LE(after, base);
        if (analyze(d).scc_count == 1) EXPECT_EQ(after, base);
      }
  }
}

TEST(BalancePropertyTest, BalancedFullImpliesEdgeRelation) {
  const FiniteGroup g = make_group("symmetric:3");
  for (const Digraph& d : small_digraphs(3, 3)) {
    if (d.vertex_count() + d.edge_count() > 6) continue;
    brute_force_for_each(g, d, Target::full, Mode::flexible, [&](std::span<const Element> slots) {
      for (EdgeId id = 0; id < d.edge_count(); ++id) {
        const Edge& e = d.edge(id);
        if (e.is_loop()) continue;
        const Element a = slots[e.origin], b = slots[e.endpoint], p = slots[d.vertex_count() + id];
        EXPECT_EQ(g.mul(g.mul(a, p), b), p);
      }
    });
  }
}

}  // namespace
}  // namespace balgraph
