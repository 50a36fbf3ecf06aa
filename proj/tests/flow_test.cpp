#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"
#include "wsman/flow.hpp"

namespace wsman {
namespace {

using testing::example_network;
using testing::one_based;
namespace oracle = testing::oracle;

TEST(BuildFlowNetwork, ExampleNetworkExcludingLastSource) {
  const auto net = build_flow_network(example_network(), 3);
  EXPECT_EQ(net.node_count(), 16u);
  EXPECT_EQ(net.arcs().size(), 30u);
  EXPECT_EQ(net.coding_sources(), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(net.infinity(), 7u);

  std::size_t unit = 0;
  std::size_t infinite = 0;
  for (const auto& a : net.arcs()) (a.capacity == 1 ? unit : infinite) += 1;
  EXPECT_EQ(unit, 6u + 3u);
  EXPECT_EQ(infinite, 9u + 3u + 9u);

  // Packet node p4 feeds r2 and r3 only (relay 4 hears sources 2 and 3).
  std::vector<std::string> fed;
  for (const auto& a : net.arcs()) {
    if (net.name(a.from) == "p4") fed.push_back(net.name(a.to));
  }
  std::sort(fed.begin(), fed.end());
  EXPECT_EQ(fed, (std::vector<std::string>{"r2", "r3"}));
}

TEST(BuildFlowNetwork, NodeAndArcCountsForEveryExclusion) {
  const auto s = example_network();
  for (std::size_t i0 = 0; i0 < 4; ++i0) {
    const auto net = build_flow_network(s, i0);
    EXPECT_EQ(net.node_count(), 1 + 6 + 3 * 3u);
    EXPECT_EQ(net.arcs().size(), 6 + 9 + 3 + 3 + 9u);
  }
  EXPECT_THROW(build_flow_network(s, 4), UsageError);
  EXPECT_THROW(build_flow_network(s, 0, 6), UsageError);
}

TEST(BuildFlowNetwork, SingleSourceHasNoSinks) {
  const auto net = build_flow_network(Sman::all_ones(1, 3), 0);
  EXPECT_EQ(net.node_count(), 4u);
  EXPECT_TRUE(net.coding_sources().empty());
  EXPECT_TRUE(check_min_cut_condition(Sman::all_ones(1, 3)).verdict.holds);
}

TEST(BuildFlowNetwork, DumpFormat) {
  const auto dump = build_flow_network(Sman::all_ones(2, 2), 1).dump();
  EXPECT_EQ(dump,
            "s p1 1\n"
            "s p2 1\n"
            "p1 r1 3\n"
            "p2 r1 3\n"
            "r1 b1 1\n"
            "r1 t1 3\n"
            "b1 t1 3\n");
}

TEST(MaxFlow, Examples) {
  FlowNetwork single;
  const auto s = single.add_node("s");
  const auto t = single.add_node("t");
  single.add_arc(s, t, 3);
  EXPECT_EQ(max_flow(single, s, t).value, 3u);

  FlowNetwork disconnected;
  disconnected.add_node("s");
  disconnected.add_node("x");
  disconnected.add_node("t");
  disconnected.add_arc(0, 1, 5);
  EXPECT_EQ(max_flow(disconnected, 0, 2).value, 0u);

  EXPECT_THROW(max_flow(single, 0, 7), UsageError);
  EXPECT_THROW(max_flow(single, 0, 0), UsageError);
  EXPECT_THROW(single.add_arc(0, 9, 1), UsageError);
}

TEST(MaxFlow, ExampleNetworkFirstSinkIsShortOfN) {
  const auto net = build_flow_network(example_network(), 3);
  const auto flow = max_flow(net, net.source(), net.sink(0));
  // Cut T = {t1, b1..b3, r1, p1, p2, p3} costs |R_1| + (k - 1 - 1) = 5.
  EXPECT_LE(flow.value, 5u);
  EXPECT_EQ(flow.value, oracle::min_cut_by_enumeration(net, net.source(), net.sink(0)));
}

TEST(MaxFlow, EqualsEnumeratedMinimumCutOnSmallNetworks) {
  SplitMix64 rng(7);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t k = 2 + rng.below(2);
    const std::size_t n = k + rng.below(k == 2 ? 7 : 3);  // at most 12 nodes
    const auto s = testing::random_sman(rng, k, n, 50);
    const auto net = build_flow_network(s, rng.below(k));
    ASSERT_LE(net.node_count(), 12u);
    for (std::size_t sink = 0; sink + 1 < k; ++sink) {
      const auto flow = max_flow(net, net.source(), net.sink(sink));
      EXPECT_EQ(flow.value, oracle::min_cut_by_enumeration(net, net.source(), net.sink(sink)));
      // The residual-reachable set is a minimum cut.
      Capacity cut = 0;
      for (const auto& a : net.arcs()) {
        if (flow.source_side[a.from] && !flow.source_side[a.to]) cut += a.capacity;
      }
      EXPECT_EQ(cut, flow.value);
      ++checked;
    }
  }
  EXPECT_GT(checked, 150);
}

TEST(MinCutCondition, Examples) {
  const auto report = check_min_cut_condition(example_network());
  EXPECT_FALSE(report.verdict.holds);
  ASSERT_TRUE(report.failure.has_value());
  EXPECT_EQ(report.failure->excluded_source, 3u);
  EXPECT_EQ(report.failure->sink, 0u);
  EXPECT_EQ(report.failure->sink_source, 0u);
  EXPECT_LE(report.failure->flow, 5u);
  EXPECT_EQ(report.verdict.witness_kind, WitnessKind::source_set);
  EXPECT_EQ(report.verdict.witness, one_based({1}));

  EXPECT_TRUE(check_min_cut_condition(Sman::all_ones(4, 6)).verdict.holds);
  EXPECT_TRUE(check_min_cut_condition(Sman({{1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}})).verdict.holds);
}

TEST(MinCutCondition, AgreesWithBruteForceExhaustivelyForTwoSources) {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (2 * n)); ++bits) {
      Sman s(2, n);
      for (std::size_t b = 0; b < 2 * n; ++b) {
        if ((bits >> b) & 1) s.set_link(b / n, b % n, true);
      }
      ASSERT_EQ(check_min_cut_condition(s).verdict.holds, oracle::weak_security(s));
    }
  }
}

TEST(MinCutCondition, AgreesWithBruteForceOnRandomAndStructuredMatrices) {
  SplitMix64 rng(99);
  std::vector<Sman> family;
  // Structured: all-ones, all-ones minus a diagonal, every row at the
  // n - k + 2 threshold, and one row just below it.
  for (std::size_t k = 2; k <= 4; ++k)
    for (std::size_t n = k; n <= 7; ++n) {
      family.push_back(Sman::all_ones(k, n));
      auto minus = Sman::all_ones(k, n);
      for (std::size_t i = 0; i < k; ++i) minus.set_link(i, i, false);
      family.push_back(minus);
      Sman band(k, n);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t d = 0; d < std::min(n, n - k + 2); ++d) band.set_link(i, (i + d) % n, true);
      family.push_back(band);
      auto short_row = band;
      short_row.set_link(0, 0, false);
      family.push_back(short_row);
    }
  for (int t = 0; t < 600; ++t) {
    const std::size_t k = 2 + rng.below(3);
    family.push_back(testing::random_sman(rng, k, k + rng.below(8 - k), 40 + rng.below(55)));
  }
  std::size_t holds = 0;
  for (const auto& s : family) {
    const auto report = check_min_cut_condition(s);
    const bool brute = oracle::weak_security(s);
    ASSERT_EQ(report.verdict.holds, brute);
    holds += brute ? 1 : 0;
    if (!report.verdict.holds) {
      EXPECT_LT(row_union(s, report.verdict.witness).size(), s.n() - s.k() + report.verdict.witness.size() + 1);
    }
  }
  // Both outcomes are represented.
  EXPECT_GT(holds, 50u);
  EXPECT_LT(holds, family.size() - 50);
}

TEST(MinCutCondition, LargerSurrogateNeverChangesTheVerdict) {
  SplitMix64 rng(5);
  for (int t = 0; t < 300; ++t) {
    const std::size_t k = 2 + rng.below(3);
    const auto s = testing::random_sman(rng, k, k + rng.below(8 - k), 70);
    const bool base = check_min_cut_condition(s).verdict.holds;
    for (Capacity inf : {Capacity{s.n() + 2}, Capacity{2 * s.n()}, Capacity{1000000}}) {
      EXPECT_EQ(check_min_cut_condition(s, inf).verdict.holds, base);
    }
  }
}

TEST(MinCutCondition, WorkStaysPolynomial) {
  // k (k - 1) max-flow runs; each run augments at most n times and every BFS
  // scans each residual arc at most once.
  for (std::size_t k : {std::size_t{3}, std::size_t{6}, std::size_t{10}})
    for (std::size_t n : {k, 2 * k, std::size_t{40}}) {
      const auto s = Sman::all_ones(k, n);
      const auto report = check_min_cut_condition(s);
      EXPECT_TRUE(report.verdict.holds);
      EXPECT_EQ(report.max_flow_runs, k * (k - 1));
      const std::size_t arcs = n + k * n + 2 * (k - 1) + (k - 1) * (k - 1);
      EXPECT_LE(report.arc_scans, k * (k - 1) * (n + 1) * 2 * arcs);
    }
}

TEST(MinCutCondition, HandlesNetworksBeyondBruteForceReach) {
  // n = 60 relays: 2^60 column subsets, but only k (k - 1) flow problems.
  auto s = Sman::all_ones(5, 60);
  EXPECT_TRUE(check_min_cut_condition(s).verdict.holds);
  for (std::size_t j = 0; j < 58; ++j) s.set_link(0, j, false);  // |R_1| = 2 < n - k + 2 = 57
  const auto report = check_min_cut_condition(s);
  EXPECT_FALSE(report.verdict.holds);
  EXPECT_EQ(report.verdict.witness, one_based({1}));
}

}  // namespace
}  // namespace wsman
