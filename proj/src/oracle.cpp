#include "streamcut/oracle.hpp"

#include <cmath>
#include <sstream>

#include "streamcut/error.hpp"

namespace streamcut {

namespace {

void check_size(std::size_t n, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be positive");
  double bound = std::pow(static_cast<double>(k), static_cast<double>(n));
  if (bound > kOracleLimit) {
    std::ostringstream msg;
    msg << "oracle instance too large: k^n = " << k << "^" << n << " = " << bound << " exceeds "
        << kOracleLimit;
    throw InstanceTooLarge(msg.str());
  }
}

class Search {
 public:
  Search(const Graph& g, std::size_t k, const CostModel& model)
      : g_(g), model_(model), n_(g.num_vertices()), k_(k),
        assignment_(n_, 0), sizes_(k, 0), internal_(k, 0), earlier_(n_) {
    for (VertexId v = 0; v < n_; ++v) {
      for (VertexId u : g.neighbors(v)) {
        if (u < v) earlier_[v].push_back(u);
      }
    }
  }

  void run(std::size_t depth) {
    if (depth == n_) {
      leaf();
      return;
    }
    const auto v = static_cast<VertexId>(depth);
    const std::size_t choices = depth == 0 ? 1 : k_;
    for (ClusterId c = 0; c < choices; ++c) {
      std::uint64_t same = 0;
      for (VertexId u : earlier_[v]) same += assignment_[u] == c;
      assignment_[v] = c;
      ++sizes_[c];
      internal_[c] += same;
      run(depth + 1);
      --sizes_[c];
      internal_[c] -= same;
    }
  }

  std::vector<ClusterId> best;
  double best_g = 0.0;
  std::uint64_t enumerated = 0;

 private:
  void leaf() {
    ++enumerated;
    const auto& sizes = model_.size_mode == SizeMode::VertexCardinality ? sizes_ : internal_;
    double value = 0.0;
    for (ClusterId c = 0; c < k_; ++c) {
      value += static_cast<double>(internal_[c]) - model_.cost(static_cast<double>(sizes[c]));
    }
    if (best.empty() || value > best_g) {
      best_g = value;
      best = assignment_;
    }
  }

  const Graph& g_;
  const CostModel& model_;
  std::size_t n_;
  std::size_t k_;
  std::vector<ClusterId> assignment_;
  std::vector<std::uint64_t> sizes_;
  std::vector<std::uint64_t> internal_;
  std::vector<std::vector<VertexId>> earlier_;
};

}  // namespace

OracleResult brute_force_optimal(const Graph& g, std::size_t k, const CostModel& model) {
  check_size(g.num_vertices(), k);
  if (g.empty()) throw EmptyGraphError("oracle needs at least one vertex");
  Search search(g, k, model);
  search.run(0);

  OracleResult result;
  result.best_assignment = std::move(search.best);
  result.partitions_enumerated = search.enumerated;
  auto snapshot = PartitionSnapshot::from_assignment(g, k, result.best_assignment);
  result.best_f = eval_f(snapshot, model);
  result.best_g = eval_g(snapshot, model);
  result.best_g_shifted = eval_g_shifted(snapshot, model, g.num_edges());
  return result;
}

void for_each_assignment(std::size_t n, std::size_t k, bool pin_first,
                         const std::function<void(std::span<const ClusterId>)>& visit) {
  check_size(n, k);
  if (n == 0) {
    visit({});
    return;
  }
  std::vector<ClusterId> digits(n, 0);
  const auto top = static_cast<ClusterId>(k - 1);
  while (true) {
    visit(digits);
    // Odometer increment, last vertex fastest.
    std::size_t i = n;
    const std::size_t floor = pin_first ? 1 : 0;
    while (i > floor && digits[i - 1] == top) digits[--i] = 0;
    if (i == floor) return;
    ++digits[i - 1];
  }
}

}  // namespace streamcut
