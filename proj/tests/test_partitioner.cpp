#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "streamcut/error.hpp"
#include "streamcut/generators.hpp"
#include "streamcut/metrics.hpp"
#include "streamcut/oracle.hpp"
#include "streamcut/partitioner.hpp"
#include "streamcut/stream_order.hpp"

using namespace streamcut;
using doctest::Approx;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CostModel model(double alpha, double gamma, MarginalMode mode = MarginalMode::Derivative,
                double nu = kInf) {
  return CostModel{alpha, gamma, nu, SizeMode::VertexCardinality, mode};
}

std::vector<ClusterId> trace(const Graph& g, const StreamPlan& plan, std::size_t k, Heuristic h,
                             const CostModel& m, TiePolicy ties = TiePolicy::LowestIndex) {
  PartitionRun run(g, k, h, m, 7, ties);
  std::vector<ClusterId> out;
  for (auto v : plan.sequence) out.push_back(run.assign_vertex(v));
  return out;
}

// Triangles (v, w, z) with w, z in `members`, by checking every pair.
std::uint64_t triangles_by_pairs(const Graph& g, VertexId v, const std::vector<VertexId>& members) {
  std::uint64_t t = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      VertexId w = members[i], z = members[j];
      if (g.has_edge(v, w) && g.has_edge(v, z) && g.has_edge(w, z)) ++t;
    }
  }
  return t;
}

}  // namespace

TEST_CASE("first vertex goes to cluster 0 for every heuristic but hash") {
  Graph g = testing::four_cycle();
  for (auto h : all_heuristics()) {
    if (h == Heuristic::Hash) continue;
    for (auto ties : {TiePolicy::LowestIndex, TiePolicy::MinLoadThenLowestIndex}) {
      PartitionRun run(g, 3, h, model(0.5, 1.5), 1, ties);
      CHECK(run.assign_vertex(2) == 0);
    }
  }
}

TEST_CASE("fennel picks the larger delta_g") {
  // v = 4 has neighbors 0, 1 in cluster 0 (size 3) and 3 in cluster 1 (size 1).
  Graph g = testing::make_graph(5, {{4, 0}, {4, 1}, {4, 3}});
  PartitionRun run(g, 2, Heuristic::Fennel, model(1.0, 2.0), 0);
  run.place(0, 0);
  run.place(1, 0);
  run.place(2, 0);
  run.place(3, 1);
  CHECK(run.assign_vertex(4) == 1);
}

TEST_CASE("tie policies differ only on load") {
  // Cluster 0 has two vertices, cluster 1 one, cluster 2 none; v has no assigned neighbors.
  Graph g = Graph::from_edges(4, {});
  for (auto [ties, expected] : {std::pair{TiePolicy::LowestIndex, 0u},
                                std::pair{TiePolicy::MinLoadThenLowestIndex, 2u}}) {
    PartitionRun run(g, 3, Heuristic::DG, model(1, 1), 0, ties);
    run.place(0, 0);
    run.place(1, 0);
    run.place(2, 1);
    CHECK(run.assign_vertex(3) == expected);
  }
  CHECK(parse_tie_policy(to_string(TiePolicy::MinLoadThenLowestIndex)) ==
        TiePolicy::MinLoadThenLowestIndex);
  CHECK(parse_tie_policy("lowest-index") == TiePolicy::LowestIndex);
  CHECK_THROWS_AS(parse_tie_policy("random"), InvalidArgument);
}

TEST_CASE("bridged triangles split along the bridge") {
  Graph g = testing::make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}});
  // With alpha below 2/3 a vertex joins a single neighbor (1 - 1.5 alpha > 0).
  // Starting at bridge endpoint 3 instead sends 4 to a fresh cluster
  // (1 - 0.75 sqrt 2 < 0), so only the other triangle vertices are used.
  for (VertexId start : {0u, 1u, 4u, 5u}) {
    auto plan = make_stream_from(g, OrderKind::BFS, start, 3);
    auto run = partition_stream(g, plan, 2, Heuristic::Fennel, model(0.5, 1.5), 0);
    CHECK(compute_lambda(g, run.snapshot) == Approx(1.0 / 7.0));
    CHECK(compute_rho(run.snapshot, 6, 2) == Approx(1.0));
  }
  // Auto alpha is 7 sqrt(2) / 6^1.5 > 2/3, so vertex 1 opens the second
  // cluster, vertex 2 ties (1 - 1.5 alpha both ways) and goes to cluster 0,
  // and the rest follow cluster 0 while its penalty stays below cluster 1's.
  auto plan = make_stream_from(g, OrderKind::BFS, 0, 3);
  auto run = partition_stream(g, plan, 2, Heuristic::Fennel, ObjectiveConfig{}, 0);
  CHECK(resolve_alpha(g, 2, 1.5) > 2.0 / 3.0);
  auto a = run.snapshot.assignment();
  CHECK(std::vector<ClusterId>(a.begin(), a.end()) == std::vector<ClusterId>{0, 1, 0, 0, 0, 0});
  CHECK(compute_lambda(g, run.snapshot) == Approx(2.0 / 7.0));
}

TEST_CASE("k = 1 puts everything together and k = 0 is rejected") {
  Graph g = testing::random_graph(30, 0.2, 1);
  auto plan = make_stream(g, OrderKind::Random, 1);
  for (auto h : all_heuristics()) {
    auto run = partition_stream(g, plan, 1, h, ObjectiveConfig{}, 2);
    CHECK(run.snapshot.fully_assigned());
    CHECK(compute_lambda(g, run.snapshot) == 0.0);
    CHECK(compute_rho(run.snapshot, 30, 1) == 1.0);
  }
  CHECK_THROWS_AS(partition_stream(g, plan, 0, Heuristic::Fennel, ObjectiveConfig{}, 0), InvalidArgument);
}

TEST_CASE("k larger than n leaves clusters empty") {
  Graph g = testing::triangle();
  auto plan = make_stream(g, OrderKind::Random, 0);
  auto run = partition_stream(g, plan, 8, Heuristic::Balanced, ObjectiveConfig{}, 0);
  CHECK(run.snapshot.fully_assigned());
  CHECK(compute_rho(run.snapshot, 3, 8) == Approx(8.0 / 3.0));
}

TEST_CASE("every heuristic yields a complete, deterministic partition with 2m neighbor scans") {
  auto hp = generate_hp({300, 4, 0.2, 0.02, 11});
  const Graph& g = hp.graph;
  for (auto kind : {OrderKind::Random, OrderKind::BFS, OrderKind::DFS}) {
    auto plan = make_stream(g, kind, 5);
    for (auto h : all_heuristics()) {
      CAPTURE(to_string(h));
      auto a = partition_stream(g, plan, 4, h, ObjectiveConfig{}, 9);
      auto b = partition_stream(g, plan, 4, h, ObjectiveConfig{}, 9);
      CHECK(a.snapshot.fully_assigned());
      CHECK(a.neighbor_scans == 2 * g.num_edges());
      CHECK(std::equal(a.snapshot.assignment().begin(), a.snapshot.assignment().end(),
                       b.snapshot.assignment().begin()));
      double lambda = compute_lambda(g, a.snapshot);
      double rho = compute_rho(a.snapshot, g.num_vertices(), 4);
      CHECK(lambda >= 0.0);
      CHECK(lambda <= 1.0);
      CHECK(rho >= 1.0);
      CHECK(rho <= 4.0);
    }
  }
}

TEST_CASE("gamma = 1 fennel traces match DG under either tie policy") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = generate_hp({150, 3, 0.3, 0.05, seed}).graph;
    auto plan = make_stream(g, OrderKind::Random, seed);
    for (auto ties : {TiePolicy::LowestIndex, TiePolicy::MinLoadThenLowestIndex}) {
      for (auto mode : {MarginalMode::Derivative, MarginalMode::DiscreteDifference}) {
        CHECK(trace(g, plan, 3, Heuristic::Fennel, model(0.9, 1.0, mode), ties) ==
              trace(g, plan, 3, Heuristic::DG, model(0.9, 1.0), ties));
      }
    }
  }
}

TEST_CASE("quadratic cost with alpha one half matches non-neighbors") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = generate_hp({200, 2, 0.5, 0.1, seed}).graph;
    auto plan = make_stream(g, OrderKind::Random, seed + 100);
    auto nn = trace(g, plan, 2, Heuristic::NN, model(1, 1));
    CHECK(trace(g, plan, 2, Heuristic::Fennel, model(0.5, 2.0)) == nn);
    CHECK(trace(g, plan, 2, Heuristic::Fennel, model(0.5, 2.0, MarginalMode::DiscreteDifference)) == nn);
  }
}

TEST_CASE("triangle counts match pairwise enumeration") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = testing::random_graph(40 + seed, 0.25, seed);
    auto plan = make_stream(g, OrderKind::Random, seed);
    PartitionRun run(g, 3, Heuristic::T, model(1, 1), seed);
    std::size_t half = g.num_vertices() / 2;
    for (std::size_t i = 0; i < half; ++i) run.place(plan.sequence[i], static_cast<ClusterId>(i % 3));
    for (std::size_t i = half; i < g.num_vertices(); ++i) {
      VertexId v = plan.sequence[i];
      auto fast = run.triangle_counts(v);
      for (ClusterId c = 0; c < 3; ++c) {
        std::vector<VertexId> members;
        for (VertexId u = 0; u < g.num_vertices(); ++u) {
          if (run.snapshot().cluster_of(u) == c) members.push_back(u);
        }
        CHECK(fast[c] == triangles_by_pairs(g, v, members));
      }
      run.assign_vertex(v);
      ClusterId chosen = run.snapshot().cluster_of(v);
      // T picks a cluster with the most triangles.
      CHECK(fast[chosen] == *std::max_element(fast.begin(), fast.end()));
    }
  }
}

TEST_CASE("threshold never targets an over-cap cluster except by fallback") {
  for (double nu : {0.5, 0.9, 1.0, 1.05, 1.1, 1.5}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Graph g = generate_hp({400, 5, 0.3, 0.01, seed}).graph;
      auto plan = make_stream(g, OrderKind::BFS, seed);
      const double cap = nu * 400.0 / 5.0;
      PartitionRun run(g, 5, Heuristic::Fennel, model(0.01, 1.5, MarginalMode::Derivative, nu), seed);
      std::uint64_t fallbacks = 0;
      for (auto v : plan.sequence) {
        std::vector<std::uint64_t> before(run.snapshot().vertex_counts().begin(),
                                          run.snapshot().vertex_counts().end());
        auto before_violations = run.threshold_violations();
        ClusterId c = run.assign_vertex(v);
        if (run.threshold_violations() > before_violations) {
          ++fallbacks;
          for (auto load : before) CHECK(static_cast<double>(load) > cap);
          CHECK(before[c] == *std::min_element(before.begin(), before.end()));
        } else {
          CHECK(static_cast<double>(before[c]) <= cap);
        }
      }
      CHECK(fallbacks == run.threshold_violations());
      // Below nu = 1 every cluster fills up before the stream ends.
      CHECK((nu < 1.0) == (fallbacks > 0));
      const double limit = std::max(cap, 400.0 / 5.0);
      CHECK(compute_rho(run.snapshot(), 400, 5) <= std::ceil(limit + 1) * 5 / 400.0 + 1e-12);
    }
  }
}

TEST_CASE("with nu >= 1 some cluster is always under the cap") {
  // Loads sum to fewer than n before each arrival, so they cannot all exceed nu n / k.
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = generate_hp({97, 7, 0.6, 0.02, seed}).graph;
    auto plan = make_stream(g, OrderKind::DFS, seed);
    auto run = partition_stream(g, plan, 7, Heuristic::Fennel, model(1e-4, 1.5, MarginalMode::Derivative, 1.0), 0);
    CHECK(run.threshold_violations == 0);
    CHECK(compute_rho(run.snapshot, 97, 7) <= (std::floor(97.0 / 7.0) + 1) * 7 / 97.0 + 1e-12);
  }
}

TEST_CASE("heuristic scores on a hand-built state") {
  // v = 6 is adjacent to 0, 1 (cluster 0, load 4) and 4 (cluster 1, load 2); n/k = 3.5.
  Graph g = testing::make_graph(7, {{6, 0}, {6, 1}, {6, 4}, {0, 1}});
  auto run_with = [&](Heuristic h) {
    PartitionRun run(g, 2, h, model(1, 1), 0);
    for (VertexId v = 0; v < 4; ++v) run.place(v, 0);
    run.place(4, 1);
    run.place(5, 1);
    return run.assign_vertex(6);
  };
  CHECK(run_with(Heuristic::DG) == 0);        // 2 vs 1
  CHECK(run_with(Heuristic::LDG) == 1);       // 2(1 - 4/3.5) < 0 < 1(1 - 2/3.5)
  CHECK(run_with(Heuristic::EDG) == 1);       // 2(1 - e^0.5) < 0 < 1(1 - e^-1.5)
  CHECK(run_with(Heuristic::Balanced) == 1);
  CHECK(run_with(Heuristic::NN) == 1);        // 2 - 4 < 1 - 2
  CHECK(run_with(Heuristic::T) == 0);         // one triangle (6, 0, 1)
  CHECK(run_with(Heuristic::LT) == 1);        // negative vs zero
  CHECK(run_with(Heuristic::ET) == 1);
}

TEST_CASE("hash spreads vertices uniformly") {
  Graph g = Graph::from_edges(4000, {});
  auto plan = make_stream(g, OrderKind::Random, 0);
  auto run = partition_stream(g, plan, 4, Heuristic::Hash, ObjectiveConfig{}, 77);
  for (auto c : run.snapshot.vertex_counts()) {
    CHECK(std::abs(static_cast<double>(c) - 1000.0) < 5 * std::sqrt(4000 * 0.25 * 0.75));
  }
  auto again = partition_stream(g, plan, 4, Heuristic::Hash, ObjectiveConfig{}, 78);
  CHECK_FALSE(std::equal(run.snapshot.assignment().begin(), run.snapshot.assignment().end(),
                         again.snapshot.assignment().begin()));
}

TEST_CASE("heuristics never beat the oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = testing::random_graph(8, 0.45, seed);
    ObjectiveConfig config;
    auto m = resolve(config, g, 3);
    auto best = brute_force_optimal(g, 3, m);
    auto plan = make_stream(g, OrderKind::Random, seed);
    for (auto h : all_heuristics()) {
      auto run = partition_stream(g, plan, 3, h, m, seed);
      CHECK(eval_g(run.snapshot, m) <= best.best_g + 1e-9);
    }
  }
}

TEST_CASE("heuristic names round-trip") {
  for (auto h : all_heuristics()) CHECK(parse_heuristic(to_string(h)) == h);
  CHECK(all_heuristics().size() == 10);
  CHECK_THROWS_AS(parse_heuristic("metis"), InvalidArgument);
}

TEST_CASE("assigning twice is an error") {
  Graph g = testing::triangle();
  PartitionRun run(g, 2, Heuristic::Fennel, model(1, 1.5), 0);
  run.assign_vertex(0);
  CHECK_THROWS_AS(run.assign_vertex(0), InvalidArgument);
}
