#include "streamcut/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "streamcut/error.hpp"

namespace streamcut {

double compute_lambda(const Graph& g, const PartitionSnapshot& snapshot) {
  if (!snapshot.fully_assigned()) throw InvalidArgument("lambda needs a complete assignment");
  if (g.num_edges() == 0) return 0.0;
  return static_cast<double>(snapshot.cut_edges()) / static_cast<double>(g.num_edges());
}

double compute_rho(const PartitionSnapshot& snapshot, std::size_t n, std::size_t k) {
  if (!snapshot.fully_assigned()) throw InvalidArgument("rho needs a complete assignment");
  if (n == 0 || k == 0) throw InvalidArgument("rho needs n >= 1 and k >= 1");
  auto counts = snapshot.vertex_counts();
  auto largest = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(largest) * static_cast<double>(k) / static_cast<double>(n);
}

void score_partition(const Graph& g, const PartitionSnapshot& snapshot, const CostModel& model,
                     RunResult& result) {
  result.n = g.num_vertices();
  result.m = g.num_edges();
  result.k = snapshot.k();
  result.gamma = model.gamma;
  result.alpha = model.alpha;
  result.nu = model.nu;
  result.lambda = compute_lambda(g, snapshot);
  result.rho = compute_rho(snapshot, g.num_vertices(), snapshot.k());
  result.f_value = eval_f(snapshot, model);
  result.g_value = eval_g(snapshot, model);
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace streamcut
