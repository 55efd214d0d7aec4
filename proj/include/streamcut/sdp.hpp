#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "streamcut/graph.hpp"
#include "streamcut/objective.hpp"

namespace streamcut {

// maximize  sum_{(i,j) in E} y_ij + alpha sum_{i<j} (1 - y_ij)
// s.t.      y_ii = 1,  y_ij >= 0,  Y PSD.
//
// On integral points (y_ij = 1 iff i, j share a cluster) the objective is the
// shifted objective g + c(n) for c(x) = (alpha / 2) x^2; see pair_cost_model.
struct SdpProblem {
  Graph graph;
  double alpha = 0.0;

  std::size_t dimension() const { return graph.num_vertices(); }
  // Objective at a symmetric matrix Y (only the strict upper triangle is read).
  double objective(const Eigen::MatrixXd& y) const;
};

// Vertex-cardinality cost model whose shifted objective equals the SDP's
// integral objective: gamma = 2, alpha_model = alpha_sdp / 2.
CostModel pair_cost_model(double sdp_alpha);

// Integral objective of an assignment: edges kept inside clusters plus alpha
// per separated pair.
double integral_value(const SdpProblem& problem, std::span<const ClusterId> assignment);

inline constexpr std::size_t kMaxSdpDimension = 60;

struct SdpOptions {
  double tol = 1e-6;
  int max_iters = 10000;
};

struct GramSolution {
  Eigen::MatrixXd vectors;  // row i is the unit vector of vertex i
  double sdp_value = 0.0;
  double feasibility_residual = 0.0;  // max(| |v_i| - 1 |, -min v_i.v_j)
  bool converged = false;
  int iterations = 0;
};

// ADMM on the split Y (PSD cone) = Z (unit diagonal, nonnegative entries).
// Each iteration projects onto the cone by clamping eigenvalues and onto the
// box by overwriting the diagonal and clipping negatives; the linear objective
// enters the cone step. The returned vectors factor the final cone iterate,
// rescaled to unit length.
GramSolution solve_sdp(const SdpProblem& problem, SdpOptions options = {});

// Factors a PSD-to-tolerance matrix as V V^T, clamping negative eigenvalues.
Eigen::MatrixXd gram_factor(const Eigen::MatrixXd& y);

struct RoundingResult {
  std::vector<std::vector<ClusterId>> partitions;
  std::vector<double> values;  // integral objective per trial
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation of `values`
};

// Draws t = log2(k) random hyperplanes per trial; vertex i lands in the
// cluster whose bit j is set when r_j . v_i < 0. Trial seeds are derived
// from `seed` and the trial index. k must be a power of two >= 2.
RoundingResult round_hyperplanes(const SdpProblem& problem, const GramSolution& solution,
                                 std::size_t k, std::uint64_t seed, std::size_t trials);

// Cluster labels of one trial for arbitrary vectors (rows of `vectors`).
std::vector<ClusterId> hyperplane_labels(const Eigen::MatrixXd& vectors, std::size_t k,
                                         std::uint64_t trial_seed);

// min(log k / (pi ln 2 k), 1/2), the rounding's guaranteed fraction of the
// SDP value.
double approximation_ratio_bound(std::size_t k);

// log2(k) for a power of two k >= 2, otherwise InvalidArgument.
unsigned hyperplane_count(std::size_t k);

}  // namespace streamcut
