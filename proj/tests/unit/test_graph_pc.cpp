#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "error_helpers.hpp"
#include "fixtures.hpp"
#include "lexcausal/graph.hpp"
#include "lexcausal/pc_stable.hpp"
#include "lexcausal/random.hpp"

using namespace lexcausal;
using lexcausal::testing::code_of;

namespace {

CausalGraph dag(std::vector<std::string> names, std::initializer_list<std::pair<int, int>> arcs) {
  CausalGraph g(std::move(names));
  for (auto [a, b] : arcs) g.add_directed(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  return g;
}

// (from, to, directed) by name; undirected edges listed with from < to.
std::set<std::tuple<std::string, std::string, bool>> by_name(const CausalGraph& g) {
  std::set<std::tuple<std::string, std::string, bool>> out;
  for (const auto& e : g.edges()) {
    auto a = g.name(e.a), b = g.name(e.b);
    if (!e.directed && b < a) std::swap(a, b);
    out.emplace(a, b, e.directed);
  }
  return out;
}

}  // namespace

TEST(Graph, EdgeBookkeeping) {
  CausalGraph g({"a", "b", "c"});
  g.add_undirected(0, 1);
  g.add_directed(1, 2, EdgeProvenance::manual);
  EXPECT_TRUE(g.is_undirected(0, 1));
  EXPECT_TRUE(g.is_directed(1, 2));
  EXPECT_FALSE(g.is_directed(2, 1));
  EXPECT_EQ(g.provenance(1, 2), EdgeProvenance::manual);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_EQ(g.parents(2), std::vector<std::size_t>{1});
  EXPECT_EQ(g.undirected_neighbors(1), std::vector<std::size_t>{0});
  g.orient(1, 0, EdgeProvenance::meek);
  EXPECT_TRUE(g.has_directed_path(1, 2));
  EXPECT_FALSE(g.has_directed_path(0, 2));
  g.unorient(1, 0);
  EXPECT_TRUE(g.is_undirected(0, 1));
  g.remove_edge(0, 1);
  EXPECT_FALSE(g.adjacent(0, 1));
  EXPECT_EQ(code_of([&] { g.index_of("zz"); }), Errc::UnknownNode);
}

TEST(Graph, DSeparationOnClassicShapes) {
  const auto chain = dag({"x", "m", "y"}, {{0, 1}, {1, 2}});
  const std::vector<std::size_t> m = {1};
  EXPECT_FALSE(d_separated(chain, 0, 2, {}));
  EXPECT_TRUE(d_separated(chain, 0, 2, m));
  const auto collider = dag({"x", "c", "y", "d"}, {{0, 1}, {2, 1}, {1, 3}});
  const std::vector<std::size_t> c = {1};
  const std::vector<std::size_t> d = {3};
  EXPECT_TRUE(d_separated(collider, 0, 2, {}));
  EXPECT_FALSE(d_separated(collider, 0, 2, c));
  EXPECT_FALSE(d_separated(collider, 0, 2, d));
}

TEST(Graph, JsonAndDotRoundTrip) {
  CausalGraph g({"type", "polysemy", "log_frequency"});
  g.add_directed(0, 1, EdgeProvenance::manual);
  g.add_undirected(1, 2);
  EdgeFractions f = {{{"polysemy", "type"}, 1.0}, {{"log_frequency", "polysemy"}, 0.7}};
  const auto text = graph_to_json(g, &f);
  const auto back = graph_from_json(text);
  EXPECT_EQ(back, g);
  EXPECT_EQ(back.provenance(0, 1), EdgeProvenance::manual);
  const auto dot = graph_to_dot(g, &f);
  EXPECT_NE(dot.find("\"type\" -> \"polysemy\""), std::string::npos);
  EXPECT_NE(dot.find("dir=none"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

TEST(Pc, ChainLeavesUndirectedSkeleton) {
  const DSeparationOracle oracle(dag({"a", "b", "c"}, {{0, 1}, {1, 2}}));
  const auto r = run_pc_stable(oracle, {});
  EXPECT_TRUE(r.cpdag.is_undirected(0, 1));
  EXPECT_TRUE(r.cpdag.is_undirected(1, 2));
  EXPECT_FALSE(r.cpdag.adjacent(0, 2));
  ASSERT_NE(r.skeleton.sepsets.find("c", "a"), nullptr);
  EXPECT_EQ(*r.skeleton.sepsets.find("a", "c"), std::vector<std::string>{"b"});
}

TEST(Pc, ColliderIsOriented) {
  const DSeparationOracle oracle(dag({"a", "b", "c"}, {{0, 1}, {2, 1}}));
  const auto r = run_pc_stable(oracle, {});
  EXPECT_TRUE(r.cpdag.is_directed(0, 1));
  EXPECT_TRUE(r.cpdag.is_directed(2, 1));
  EXPECT_EQ(r.cpdag.provenance(0, 1), EdgeProvenance::v_structure);
}

TEST(Pc, MeekPropagatesAwayFromCollider) {
  // a -> c <- b, c -> d: rule 1 orients c -> d.
  const DSeparationOracle oracle(dag({"a", "b", "c", "d"}, {{0, 2}, {1, 2}, {2, 3}}));
  const auto r = run_pc_stable(oracle, {});
  EXPECT_TRUE(r.cpdag.is_directed(2, 3));
  EXPECT_EQ(r.cpdag.provenance(2, 3), EdgeProvenance::meek);
}

TEST(Pc, IndependentColumnsGiveEmptyGraph) {
  const DSeparationOracle oracle(CausalGraph(lexcausal::testing::node_names(5)));
  const auto r = run_pc_stable(oracle, {});
  EXPECT_EQ(r.cpdag.edge_count(), 0u);
  EXPECT_EQ(r.skeleton.sepsets.size(), 10u);
}

TEST(Pc, MatchesBruteForceEquivalenceClassesOnFourNodes) {
  const auto dags = lexcausal::testing::all_dags(4);
  ASSERT_EQ(dags.size(), 543u);
  const lexcausal::testing::MarkovEquivalenceOracle classes(dags);
  EXPECT_EQ(classes.classes(), 185u);
  for (const auto& d : dags) {
    const DSeparationOracle oracle(d);
    const auto r = run_pc_stable(oracle, {});
    EXPECT_TRUE(r.warnings.empty());
    ASSERT_EQ(by_name(r.cpdag), by_name(classes.cpdag(d)));
  }
}

TEST(Pc, ResultDoesNotDependOnColumnOrder) {
  const std::vector<std::string> names = {"a", "b", "c", "d", "e"};
  const auto d = dag(names, {{0, 2}, {1, 2}, {2, 3}, {4, 3}, {0, 4}});
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::size_t> perm = {0, 1, 2, 3, 4};
    shuffle(std::span<std::size_t>(perm), rng);
    std::vector<std::string> shuffled;
    for (auto p : perm) shuffled.push_back(names[p]);
    CausalGraph permuted(shuffled);
    for (const auto& e : d.edges()) permuted.add_directed(permuted.index_of(d.name(e.a)), permuted.index_of(d.name(e.b)));
    const auto a = run_pc_stable(DSeparationOracle(d), {});
    const auto b = run_pc_stable(DSeparationOracle(permuted), {});
    EXPECT_EQ(by_name(a.cpdag), by_name(b.cpdag));
    EXPECT_EQ(a.skeleton.sepsets, b.skeleton.sepsets);
  }
}

TEST(Pc, ConditioningLimit) {
  // a and d are separated only by {b, c}.
  const auto d = dag({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  PCOptions o;
  o.max_conditioning = 1;
  EXPECT_TRUE(run_pc_stable(DSeparationOracle(d), o).skeleton.graph.adjacent(0, 3));
  o.max_conditioning = 2;
  EXPECT_FALSE(run_pc_stable(DSeparationOracle(d), o).skeleton.graph.adjacent(0, 3));
}

TEST(ManualOrient, OrientsAndValidates) {
  CausalGraph g({"a", "b", "c"});
  g.add_undirected(0, 1);
  g.add_directed(1, 2);
  g.add_undirected(0, 2);
  const auto out = manual_orient(g, "a", "b");
  EXPECT_TRUE(out.is_directed(0, 1));
  EXPECT_EQ(out.provenance(0, 1), EdgeProvenance::manual);
  EXPECT_EQ(code_of([&] { manual_orient(g, "b", "c"); }), Errc::EdgeNotFound);
  EXPECT_EQ(code_of([&] { manual_orient(g, "missing", "c"); }), Errc::UnknownNode);
  const auto partial = manual_orient(g, "c", "a");
  EXPECT_EQ(code_of([&] { manual_orient(partial, "a", "b"); }), Errc::WouldCreateCycle);
}

TEST(Meek, RuleTwoAndThree) {
  // Rule 2: a -> b -> c with a - c gives a -> c.
  CausalGraph g({"a", "b", "c"});
  g.add_directed(0, 1);
  g.add_directed(1, 2);
  g.add_undirected(0, 2);
  EXPECT_TRUE(apply_meek_rules(g).is_directed(0, 2));

  // Rule 3: a - b, a - c, a - d, c -> b <- d, c and d nonadjacent gives a -> b.
  CausalGraph h({"a", "b", "c", "d"});
  h.add_undirected(0, 1);
  h.add_undirected(0, 2);
  h.add_undirected(0, 3);
  h.add_directed(2, 1);
  h.add_directed(3, 1);
  const auto r = apply_meek_rules(h);
  EXPECT_TRUE(r.is_directed(0, 1));
  EXPECT_TRUE(r.is_undirected(0, 2));
}
