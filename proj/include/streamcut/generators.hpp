#pragma once

#include <cstdint>
#include <vector>

#include "streamcut/graph.hpp"
#include "streamcut/objective.hpp"

namespace streamcut {

// Hidden partition model HP(n, k, p, q): labels are uniform over k clusters,
// same-cluster pairs are joined with probability p and cross-cluster pairs
// with probability q.
struct HpParams {
  std::size_t n = 0;
  std::size_t k = 1;
  double p = 0.0;
  double q = 0.0;
  std::uint64_t seed = 0;
};

struct HpGraph {
  Graph graph;
  std::vector<ClusterId> labels;  // planted cluster per vertex
};

HpGraph generate_hp(const HpParams& params);

enum class ClSampling {
  PairLoop,  // one Bernoulli draw per pair, O(n^2)
  Skip,      // geometric skipping over weight-sorted pairs, O(n + m)
};

// Chung-Lu CL(n, slope) with expected-degree weights
// w_i = c (i + i0)^(-1/(slope-1)). c fixes the average weight at avg_degree
// and i0 is the smallest offset keeping max w_i <= sqrt(W), so
// w_i w_j / W never exceeds one.
struct ClParams {
  std::size_t n = 0;
  double slope = 2.5;
  double avg_degree = 10.0;
  std::uint64_t seed = 0;
  ClSampling sampling = ClSampling::PairLoop;
};

struct ClWeights {
  std::vector<double> weights;  // non-increasing
  double total = 0.0;           // W
  double scale = 0.0;           // c
  double offset = 0.0;          // i0
};

ClWeights chung_lu_weights(std::size_t n, double slope, double avg_degree);

struct ClGraph {
  Graph graph;
  ClWeights weights;
};

ClGraph generate_cl(const ClParams& params);

}  // namespace streamcut
