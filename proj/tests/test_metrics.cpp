#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "streamcut/error.hpp"
#include "streamcut/generators.hpp"
#include "streamcut/metrics.hpp"
#include "streamcut/partitioner.hpp"

using namespace streamcut;
using doctest::Approx;

namespace {

PartitionSnapshot snap(const Graph& g, std::size_t k, std::vector<ClusterId> a) {
  return PartitionSnapshot::from_assignment(g, k, a);
}

}  // namespace

TEST_CASE("lambda examples") {
  Graph g = testing::triangle();
  CHECK(compute_lambda(g, snap(g, 2, {0, 0, 0})) == 0.0);
  CHECK(compute_lambda(g, snap(g, 2, {0, 0, 1})) == Approx(2.0 / 3.0));
  Graph empty = Graph::from_edges(3, {});
  CHECK(compute_lambda(empty, snap(empty, 2, {0, 1, 0})) == 0.0);
}

TEST_CASE("rho examples") {
  Graph g = Graph::from_edges(4, {});
  CHECK(compute_rho(snap(g, 2, {0, 1, 0, 1}), 4, 2) == 1.0);
  CHECK(compute_rho(snap(g, 2, {0, 0, 0, 1}), 4, 2) == 1.5);
  CHECK(compute_rho(snap(g, 4, {2, 2, 2, 2}), 4, 4) == 4.0);
}

TEST_CASE("metrics need a complete assignment") {
  Graph g = testing::triangle();
  PartitionSnapshot s(3, 2);
  s.assign(g, 0, 0);
  CHECK_THROWS_AS(compute_lambda(g, s), InvalidArgument);
  CHECK_THROWS_AS(compute_rho(s, 3, 2), InvalidArgument);
}

TEST_CASE("lambda plus the internal fraction is one, rho is within [1, k]") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Graph g = testing::random_graph(25, 0.3, seed);
    std::mt19937_64 rng(seed);
    std::size_t k = 2 + seed % 5;
    std::vector<ClusterId> a(25);
    for (auto& x : a) x = static_cast<ClusterId>(rng() % k);
    auto s = snap(g, k, a);
    CHECK(s.cut_edges() + s.total_internal_edges() == g.num_edges());
    CHECK(compute_lambda(g, s) == static_cast<double>(s.cut_edges()) / g.num_edges());
    double rho = compute_rho(s, 25, k);
    CHECK(rho >= 1.0);
    CHECK(rho <= static_cast<double>(k));
  }
}

TEST_CASE("hash cuts 1 - 1/k of the edges on average") {
  for (std::size_t k : {2u, 4u, 8u}) {
    Graph g = generate_hp({400, 4, 0.3, 0.1, k}).graph;
    std::vector<double> lambdas;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      auto plan = make_stream(g, OrderKind::Random, seed);
      auto run = partition_stream(g, plan, k, Heuristic::Hash, ObjectiveConfig{}, seed);
      lambdas.push_back(compute_lambda(g, run.snapshot));
    }
    auto s = summarize(lambdas);
    CHECK(std::abs(s.mean - (1.0 - 1.0 / k)) < 4 * s.stddev / std::sqrt(40.0) + 1e-3);
  }
}

TEST_CASE("score_partition fills the quality fields") {
  Graph g = testing::triangle();
  auto s = snap(g, 2, {0, 0, 1});
  CostModel m{1.0, 2.0, 1.1, SizeMode::VertexCardinality, MarginalMode::Derivative};
  RunResult r;
  score_partition(g, s, m, r);
  CHECK(r.n == 3);
  CHECK(r.m == 3);
  CHECK(r.k == 2);
  CHECK(r.lambda == Approx(2.0 / 3.0));
  CHECK(r.rho == Approx(4.0 / 3.0));
  CHECK(r.f_value == Approx(2.0 + 4.0 + 1.0));
  CHECK(r.g_value == Approx(1.0 - 5.0));
  CHECK(r.nu == 1.1);
}

TEST_CASE("summaries use the sample standard deviation") {
  std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  auto s = summarize(v);
  CHECK(s.count == 8);
  CHECK(s.mean == Approx(5.0));
  CHECK(s.stddev == Approx(std::sqrt(32.0 / 7.0)));
  CHECK(summarize(std::vector<double>{3.0}).stddev == 0.0);
  CHECK(summarize(std::vector<double>{}).count == 0);
}
