#include "streamcut/sdp.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "streamcut/error.hpp"
#include "streamcut/metrics.hpp"
#include "streamcut/seeding.hpp"

namespace streamcut {

namespace {

double pair_count(std::size_t n) {
  const double x = static_cast<double>(n);
  return x * (x - 1.0) / 2.0;
}

Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  Eigen::VectorXd values = eig.eigenvalues().cwiseMax(0.0);
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

// Unit diagonal, nonnegative off-diagonal.
Eigen::MatrixXd project_box(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m.cwiseMax(0.0);
  out.diagonal().setOnes();
  return out;
}

}  // namespace

double SdpProblem::objective(const Eigen::MatrixXd& y) const {
  const std::size_t n = dimension();
  double value = alpha * pair_count(n);
  for (VertexId i = 0; i < n; ++i) {
    for (VertexId j = i + 1; j < n; ++j) value -= alpha * y(i, j);
  }
  for (auto [i, j] : graph.edge_list()) value += y(i, j);
  return value;
}

CostModel pair_cost_model(double sdp_alpha) {
  CostModel model;
  model.alpha = sdp_alpha / 2.0;
  model.gamma = 2.0;
  model.size_mode = SizeMode::VertexCardinality;
  model.marginal_mode = MarginalMode::DiscreteDifference;
  return model;
}

double integral_value(const SdpProblem& problem, std::span<const ClusterId> assignment) {
  ClusterId k = 1;
  for (ClusterId c : assignment) k = std::max(k, c + 1);
  auto snapshot = PartitionSnapshot::from_assignment(problem.graph, k, assignment);
  return eval_g_shifted(snapshot, pair_cost_model(problem.alpha), problem.graph.num_edges());
}

Eigen::MatrixXd gram_factor(const Eigen::MatrixXd& y) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(y);
  Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal();
}

GramSolution solve_sdp(const SdpProblem& problem, SdpOptions options) {
  const std::size_t n = problem.dimension();
  if (n == 0) throw EmptyGraphError("SDP needs at least one vertex");
  if (n > kMaxSdpDimension) {
    throw InstanceTooLarge("SDP dimension " + std::to_string(n) + " exceeds " +
                           std::to_string(kMaxSdpDimension));
  }
  if (!(problem.alpha >= 0.0)) throw InvalidArgument("SDP alpha must be nonnegative");

  const auto dim = static_cast<Eigen::Index>(n);
  // Gradient of the objective in Y: (A - alpha) / 2 off the diagonal.
  Eigen::MatrixXd gradient = Eigen::MatrixXd::Constant(dim, dim, -problem.alpha / 2.0);
  for (auto [i, j] : problem.graph.edge_list()) {
    gradient(i, j) += 0.5;
    gradient(j, i) += 0.5;
  }
  gradient.diagonal().setZero();

  Eigen::MatrixXd z = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd y = z;
  double penalty = 1.0;

  GramSolution solution;
  for (int iter = 1; iter <= options.max_iters; ++iter) {
    y = project_psd(z - u + gradient / penalty);
    Eigen::MatrixXd z_next = project_box(y + u);
    double dual = penalty * (z_next - z).norm();
    z = std::move(z_next);
    u += y - z;
    double primal = (y - z).norm();
    solution.iterations = iter;
    if (primal <= options.tol && dual <= options.tol) {
      solution.converged = true;
      break;
    }
    // Residual balancing.
    if (primal > 10.0 * dual) {
      penalty *= 2.0;
      u /= 2.0;
    } else if (dual > 10.0 * primal) {
      penalty /= 2.0;
      u *= 2.0;
    }
  }

  Eigen::MatrixXd v = gram_factor(y);
  for (Eigen::Index i = 0; i < dim; ++i) {
    double norm = v.row(i).norm();
    if (norm > 0.0) {
      v.row(i) /= norm;
    } else {
      v.row(i).setZero();
      v(i, i) = 1.0;
    }
  }
  Eigen::MatrixXd gram = v * v.transpose();
  double residual = 0.0;
  for (Eigen::Index i = 0; i < dim; ++i) {
    residual = std::max(residual, std::abs(gram(i, i) - 1.0));
    for (Eigen::Index j = i + 1; j < dim; ++j) residual = std::max(residual, -gram(i, j));
  }
  solution.vectors = std::move(v);
  solution.sdp_value = problem.objective(gram);
  solution.feasibility_residual = residual;
  return solution;
}

unsigned hyperplane_count(std::size_t k) {
  if (k < 2 || !std::has_single_bit(k)) {
    throw InvalidArgument("hyperplane rounding needs k = 2^t with t >= 1, got k = " + std::to_string(k));
  }
  return static_cast<unsigned>(std::countr_zero(k));
}

std::vector<ClusterId> hyperplane_labels(const Eigen::MatrixXd& vectors, std::size_t k,
                                         std::uint64_t trial_seed) {
  const unsigned t = hyperplane_count(k);
  std::mt19937_64 rng(trial_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Gaussian normals give uniformly distributed hyperplane orientations.
  Eigen::MatrixXd normals(vectors.cols(), t);
  for (Eigen::Index c = 0; c < normals.cols(); ++c) {
    for (Eigen::Index r = 0; r < normals.rows(); ++r) normals(r, c) = normal(rng);
  }
  Eigen::MatrixXd sides = vectors * normals;
  std::vector<ClusterId> labels(static_cast<std::size_t>(vectors.rows()), 0);
  for (Eigen::Index i = 0; i < sides.rows(); ++i) {
    ClusterId label = 0;
    for (unsigned j = 0; j < t; ++j) {
      if (sides(i, j) < 0.0) label |= ClusterId{1} << j;
    }
    labels[static_cast<std::size_t>(i)] = label;
  }
  return labels;
}

RoundingResult round_hyperplanes(const SdpProblem& problem, const GramSolution& solution,
                                 std::size_t k, std::uint64_t seed, std::size_t trials) {
  hyperplane_count(k);
  if (static_cast<std::size_t>(solution.vectors.rows()) != problem.dimension()) {
    throw InvalidArgument("Gram solution does not match the problem dimension");
  }
  const CostModel model = pair_cost_model(problem.alpha);
  RoundingResult result;
  result.partitions.reserve(trials);
  result.values.reserve(trials);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    auto labels = hyperplane_labels(solution.vectors, k, splitmix64(seed ^ splitmix64(trial)));
    auto snapshot = PartitionSnapshot::from_assignment(problem.graph, k, labels);
    result.values.push_back(eval_g_shifted(snapshot, model, problem.graph.num_edges()));
    result.partitions.push_back(std::move(labels));
  }
  auto summary = summarize(result.values);
  result.mean = summary.mean;
  result.stddev = summary.stddev;
  return result;
}

double approximation_ratio_bound(std::size_t k) {
  hyperplane_count(k);
  const double kk = static_cast<double>(k);
  const double rho1 = std::log(kk) / (std::numbers::pi * std::numbers::ln2 * kk);
  return std::min(rho1, 0.5);
}

}  // namespace streamcut
