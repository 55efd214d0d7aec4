#include "streamcut/generators.hpp"

#include <cmath>
#include <iostream>
#include <random>

#include "streamcut/error.hpp"

namespace streamcut {

namespace {

// Bernoulli(p) as a comparison against a 64-bit threshold.
class Coin {
 public:
  explicit Coin(double p)
      : always_(p >= 1.0), threshold_(p <= 0.0 || p >= 1.0 ? 0 : static_cast<std::uint64_t>(std::ldexp(p, 64))) {}
  bool flip(std::mt19937_64& rng) const { return always_ || rng() < threshold_; }

 private:
  bool always_;
  std::uint64_t threshold_;
};

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

HpGraph generate_hp(const HpParams& params) {
  if (params.n == 0) throw InvalidArgument("HP needs n >= 1");
  if (params.k == 0) throw InvalidArgument("HP needs k >= 1");
  check_probability(params.p, "p");
  check_probability(params.q, "q");
  if (params.q > params.p) {
    std::clog << "warning: HP with q > p has no planted community structure\n";
  }

  std::mt19937_64 rng(params.seed);
  HpGraph out;
  out.labels.resize(params.n);
  std::uniform_int_distribution<ClusterId> pick(0, static_cast<ClusterId>(params.k - 1));
  for (auto& l : out.labels) l = pick(rng);

  const Coin same(params.p), cross(params.q);
  std::vector<Edge> edges;
  const double n = static_cast<double>(params.n);
  const double pairs = n * (n - 1) / 2.0;
  edges.reserve(static_cast<std::size_t>(pairs * std::max(params.p, params.q) * 0.5 + 16));
  for (VertexId u = 0; u < params.n; ++u) {
    const ClusterId lu = out.labels[u];
    for (VertexId v = u + 1; v < params.n; ++v) {
      const Coin& coin = out.labels[v] == lu ? same : cross;
      if (coin.flip(rng)) edges.emplace_back(u, v);
    }
  }
  out.graph = Graph::from_edges(params.n, edges);
  return out;
}

ClWeights chung_lu_weights(std::size_t n, double slope, double avg_degree) {
  if (n < 2) throw InvalidArgument("CL needs n >= 2");
  if (!(slope > 1.0)) throw InvalidArgument("CL slope must be > 1");
  if (!(avg_degree > 0.0)) throw InvalidArgument("CL weight sequence is all zero (avg degree must be > 0)");
  if (avg_degree > static_cast<double>(n)) {
    throw InvalidArgument("CL average degree cannot exceed n with max weight <= sqrt(W)");
  }

  const double exponent = -1.0 / (slope - 1.0);
  const double total = static_cast<double>(n) * avg_degree;
  const double cap = std::sqrt(total);
  auto head_weight = [&](double offset) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += std::pow(static_cast<double>(i) + offset, exponent);
    return total / sum * std::pow(offset, exponent);
  };

  double lo = 1.0, hi = 1.0;
  if (head_weight(hi) > cap) {
    while (head_weight(hi) > cap) {
      lo = hi;
      hi *= 2.0;
    }
    for (int iter = 0; iter < 100 && hi - lo > 1e-9 * hi; ++iter) {
      double mid = 0.5 * (lo + hi);
      (head_weight(mid) > cap ? lo : hi) = mid;
    }
  }

  ClWeights w;
  w.offset = hi;
  double sum = 0.0;
  w.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    w.weights[i] = std::pow(static_cast<double>(i) + w.offset, exponent);
    sum += w.weights[i];
  }
  w.scale = total / sum;
  w.total = 0.0;
  for (auto& x : w.weights) {
    x *= w.scale;
    w.total += x;
  }
  return w;
}

ClGraph generate_cl(const ClParams& params) {
  ClGraph out;
  out.weights = chung_lu_weights(params.n, params.slope, params.avg_degree);
  const auto& w = out.weights.weights;
  const double total = out.weights.total;
  const std::size_t n = params.n;

  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(total / 2.0 * 1.1) + 16);

  if (params.sampling == ClSampling::PairLoop) {
    for (VertexId u = 0; u < n; ++u) {
      const double wu = w[u] / total;
      for (VertexId v = u + 1; v < n; ++v) {
        if (unit(rng) < std::min(1.0, wu * w[v])) edges.emplace_back(u, v);
      }
    }
  } else {
    // Weights are non-increasing, so each row's probabilities are too; skip
    // geometrically under the current bound and thin by q / p.
    for (VertexId u = 0; u + 1 < n; ++u) {
      std::size_t v = u + 1;
      double p = std::min(1.0, w[u] * w[v] / total);
      while (v < n && p > 0.0) {
        if (p != 1.0) {
          double r = 1.0 - unit(rng);  // (0, 1]
          double skip = std::floor(std::log(r) / std::log1p(-p));
          v = skip >= static_cast<double>(n) ? n : v + static_cast<std::size_t>(skip);
        }
        if (v < n) {
          double q = std::min(1.0, w[u] * w[v] / total);
          if (unit(rng) < q / p) edges.emplace_back(u, static_cast<VertexId>(v));
          p = q;
          ++v;
        }
      }
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

}  // namespace streamcut
