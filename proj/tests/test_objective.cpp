#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "streamcut/error.hpp"
#include "streamcut/objective.hpp"
#include "streamcut/oracle.hpp"

using namespace streamcut;
using doctest::Approx;

namespace {

CostModel model(double alpha, double gamma, MarginalMode mode = MarginalMode::Derivative) {
  return CostModel{alpha, gamma, std::numeric_limits<double>::infinity(), SizeMode::VertexCardinality,
                   mode};
}

PartitionSnapshot snap(const Graph& g, std::size_t k, std::vector<ClusterId> a) {
  return PartitionSnapshot::from_assignment(g, k, a);
}

// Edges with both endpoints in the same cluster, counted directly from the edge list.
std::uint64_t internal_by_edge_list(const Graph& g, std::span<const ClusterId> a) {
  std::uint64_t inside = 0;
  for (auto [u, v] : g.edge_list()) inside += a[u] == a[v];
  return inside;
}

}  // namespace

TEST_CASE("resolve_alpha follows the scaling rule") {
  Graph g = testing::four_cycle();
  CHECK(resolve_alpha(g, 2, 2.0) == Approx(0.5));
  CHECK(resolve_alpha(g, 9, 1.5) == Approx(3.0 * 4.0 / std::pow(4.0, 1.5)));
  // The hidden-partition instance size quoted for k = 4.
  double n = 5000, m = 7185314;
  CHECK(2.0 * m / std::pow(n, 1.5) == Approx(40.65).epsilon(1e-3));
}

TEST_CASE("resolve_alpha edge cases") {
  CHECK_THROWS_AS(resolve_alpha(Graph{}, 2, 1.5), EmptyGraphError);
  CHECK_THROWS_AS(resolve_alpha(testing::triangle(), 0, 1.5), InvalidArgument);
  Graph isolated = Graph::from_edges(4, {});
  CHECK(resolve_alpha(isolated, 2, 2.0) > 0.0);
}

TEST_CASE("config validation") {
  ObjectiveConfig c;
  c.gamma = 0.5;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.gamma = 1.5;
  c.alpha = -1.0;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.alpha.reset();
  c.nu = 0.9;
  CHECK_THROWS_AS(c.validate(), InvalidArgument);
  c.nu = 1.1;
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("interior-edge auto alpha uses m in place of n") {
  ObjectiveConfig c;
  c.size_mode = SizeMode::InteriorEdgeCardinality;
  c.gamma = 2.0;
  CostModel m = resolve(c, testing::k4(), 3);
  CHECK(m.alpha == Approx(3.0 / 6.0));
}

TEST_CASE("marginal cost closed forms") {
  for (double x : {0.0, 1.0, 5.0, 100.0}) {
    CHECK(model(0.7, 1.0).marginal_cost(x) == Approx(0.7));
    CHECK(model(0.7, 1.0, MarginalMode::DiscreteDifference).marginal_cost(x) == Approx(0.7));
  }
  CHECK(model(1.0, 2.0, MarginalMode::DiscreteDifference).marginal_cost(3) == Approx(7.0));
  CHECK(model(1.0, 2.0).marginal_cost(3) == Approx(6.0));
  CHECK(model(2.0, 1.5, MarginalMode::DiscreteDifference).marginal_cost(4) ==
        Approx(2.0 * (std::pow(5.0, 1.5) - 8.0)));
  CHECK(model(2.0, 1.5).marginal_cost(4) == Approx(6.0));
  CHECK(model(2.0, 1.5).marginal_cost(0) == 0.0);
  CHECK(model(2.0, 1.5).cost(0) == 0.0);
}

TEST_CASE("marginal cost is nondecreasing") {
  for (double gamma : {1.0, 1.25, 1.5, 2.0, 3.0, 4.0}) {
    for (auto mode : {MarginalMode::Derivative, MarginalMode::DiscreteDifference}) {
      auto c = model(0.3, gamma, mode);
      for (int x = 0; x < 500; ++x) CHECK(c.marginal_cost(x + 1) >= c.marginal_cost(x));
    }
  }
}

TEST_CASE("delta_g examples") {
  Graph g = Graph::from_edges(6, {});
  PartitionSnapshot s(6, 3);
  for (ClusterId c = 0; c < 3; ++c) CHECK(delta_g(s, c, 0, model(1.3, 1.5)) == 0.0);

  PartitionSnapshot t(6, 2);
  t.assign(g, 0, 0);
  t.assign(g, 1, 0);
  t.assign(g, 2, 0);
  CHECK(delta_g(t, 0, 2, model(1.0, 2.0)) == Approx(-4.0));
}

TEST_CASE("delta_g in interior-edge mode charges the new internal edges") {
  Graph g = testing::k4();
  PartitionSnapshot s(4, 2);
  s.assign(g, 0, 0);
  s.assign(g, 1, 0);
  CostModel m{0.5, 2.0, std::numeric_limits<double>::infinity(), SizeMode::InteriorEdgeCardinality,
              MarginalMode::Derivative};
  // Cluster 0 holds one edge; vertex 2 adds two more: 2 - 0.5 (9 - 1).
  CHECK(delta_g(s, 0, 2, m) == Approx(-2.0));
  CHECK(delta_g(s, 1, 0, m) == 0.0);
}

TEST_CASE("f and g of a triangle in one cluster") {
  Graph g = testing::triangle();
  auto s = snap(g, 2, {0, 0, 0});
  auto c = model(1.0, 2.0);
  CHECK(eval_f(s, c) == Approx(9.0));
  CHECK(eval_g(s, c) == Approx(-6.0));
  CHECK(eval_g_shifted(s, c, g.num_edges()) == Approx(3.0));
}

TEST_CASE("f and g need a full assignment") {
  Graph g = testing::triangle();
  PartitionSnapshot s(3, 2);
  s.assign(g, 0, 0);
  CHECK_THROWS_AS(eval_f(s, model(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(eval_g(s, model(1, 2)), InvalidArgument);
  CHECK_THROWS_AS(eval_modularity_form(s, 1.0), InvalidArgument);
}

TEST_CASE("snapshot counters match direct counts") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = testing::random_graph(30, 0.2, seed);
    std::mt19937_64 rng(seed);
    std::vector<ClusterId> a(30);
    for (auto& x : a) x = static_cast<ClusterId>(rng() % 4);
    auto s = snap(g, 4, a);
    CHECK(s.total_internal_edges() == internal_by_edge_list(g, a));
    CHECK(s.total_internal_edges() + s.cut_edges() == g.num_edges());
    std::uint64_t total = 0;
    for (auto c : s.vertex_counts()) total += c;
    CHECK(total == 30);
  }
}

TEST_CASE("snapshot rejects double assignment and bad clusters") {
  Graph g = testing::triangle();
  PartitionSnapshot s(3, 2);
  s.assign(g, 0, 1);
  CHECK_THROWS_AS(s.assign(g, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(s.assign(g, 1, 2), InvalidArgument);
  CHECK_THROWS_AS(PartitionSnapshot(3, 0), InvalidArgument);
}

TEST_CASE("g = m - f over every 2-coloring of the 4-cycle") {
  Graph g = testing::four_cycle();
  auto c = model(0.8, 1.7);
  int count = 0;
  for_each_assignment(4, 2, false, [&](std::span<const ClusterId> a) {
    auto s = PartitionSnapshot::from_assignment(g, 2, a);
    CHECK(eval_g(s, c) == Approx(4.0 - eval_f(s, c)));
    ++count;
  });
  CHECK(count == 16);
}

TEST_CASE("shifted objective is nonnegative") {
  for (double gamma : {1.0, 1.5, 2.0, 3.0}) {
    for (std::uint64_t mask : {0ULL, 0x3FULL, 0x15ULL}) {
      Graph g = testing::graph_from_mask(4, mask);
      auto c = model(resolve_alpha(g, 3, gamma), gamma);
      for_each_assignment(4, 3, false, [&](std::span<const ClusterId> a) {
        auto s = PartitionSnapshot::from_assignment(g, 3, a);
        CHECK(eval_g_shifted(s, c, g.num_edges()) >= -1e-12);
      });
    }
  }
}

TEST_CASE("modularity form examples") {
  Graph g = testing::triangle();
  CHECK(eval_modularity_form(snap(g, 1, {0, 0, 0}), 1.0) == Approx(0.0));
  auto s = snap(g, 2, {0, 0, 1});
  CHECK(eval_modularity_form(s, 0.0) == Approx(3.0 - s.cut_edges()));
}

TEST_CASE("modularity multiplier is found by brute force") {
  // For c(x) = alpha x^2, find which multipliers p * alpha make the
  // modularity form rank every partition exactly like g.
  const std::vector<double> multipliers{0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<bool> always(multipliers.size(), true);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    std::size_t n = 5 + seed % 4;
    Graph g = testing::random_graph(n, 0.5, seed);
    double alpha = 0.1 + 0.15 * static_cast<double>(seed % 5);
    auto c = model(alpha, 2.0);
    std::vector<double> gs;
    std::vector<std::vector<double>> forms(multipliers.size());
    for_each_assignment(n, 2, true, [&](std::span<const ClusterId> a) {
      auto s = PartitionSnapshot::from_assignment(g, 2, a);
      gs.push_back(eval_g(s, c));
      for (std::size_t i = 0; i < multipliers.size(); ++i) {
        forms[i].push_back(eval_modularity_form(s, multipliers[i] * alpha));
      }
    });
    for (std::size_t i = 0; i < multipliers.size(); ++i) {
      // Same ranking means the difference is a constant.
      double offset = gs[0] - forms[i][0];
      for (std::size_t j = 1; j < gs.size(); ++j) {
        if (std::abs(gs[j] - forms[i][j] - offset) > 1e-9) always[i] = false;
      }
    }
  }
  CHECK_FALSE(always[1]);  // the half multiplier
  CHECK(always[3]);        // p = 2 alpha
  CHECK(std::count(always.begin(), always.end(), true) == 1);
}

TEST_CASE("mode names round-trip") {
  for (auto m : {SizeMode::VertexCardinality, SizeMode::InteriorEdgeCardinality}) {
    CHECK(parse_size_mode(to_string(m)) == m);
  }
  for (auto m : {MarginalMode::Derivative, MarginalMode::DiscreteDifference}) {
    CHECK(parse_marginal_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_size_mode("weight"), InvalidArgument);
  CHECK_THROWS_AS(parse_marginal_mode("exact"), InvalidArgument);
}
