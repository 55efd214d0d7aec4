#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/metrics.hpp"
#include "streamcut/objective.hpp"
#include "streamcut/partitioner.hpp"
#include "streamcut/stream_order.hpp"

namespace streamcut {

// One `graph = ...` directive of a bench file.
struct GraphSource {
  enum class Kind { File, HiddenPartition, ChungLu };
  Kind kind = Kind::File;
  std::string label;  // directive text, used as the CSV graph column
  std::filesystem::path path;
  bool largest_component = true;
  HpParams hp;         // hp.k == 0: use the run's k
  ClParams cl;
};

// Run matrix: graphs x k x gamma x order x heuristic x seed.
struct BenchSpec {
  std::vector<GraphSource> graphs;
  std::vector<std::size_t> ks;
  std::vector<double> gammas;
  std::vector<OrderKind> orders;
  std::vector<Heuristic> heuristics;
  std::vector<std::uint64_t> seeds;
  std::optional<double> alpha;
  double nu = std::numeric_limits<double>::infinity();
  SizeMode size_mode = SizeMode::VertexCardinality;
  MarginalMode marginal_mode = MarginalMode::Derivative;
  TiePolicy tie_policy = TiePolicy::LowestIndex;
  std::size_t threads = 1;
  bool record_runtime = true;  // false writes runtime_ms = 0 for byte-stable output
  std::string output;

  void validate() const;
};

// Parses the key = value bench format documented in the README. Syntax
// errors raise ParseError; an incomplete matrix raises InvalidArgument.
BenchSpec parse_bench_spec(std::istream& in, const std::string& source_name);
BenchSpec load_bench_spec(const std::filesystem::path& path);
GraphSource parse_graph_source(const std::string& text);

struct BenchRow {
  enum class Kind { Run, Mean, Std, Failed };
  Kind kind = Kind::Run;
  RunResult result;
  std::string message;  // failure reason
  // Mean rows carry the means of n, m and threshold_violations, std rows
  // their standard deviations.
  double n_mean = 0.0;
  double m_mean = 0.0;
  double violations_mean = 0.0;
};

// Generator graphs are drawn once per (graph, k, seed) from the run seed;
// file graphs are loaded once. Rows come back grouped by
// (graph, k, gamma, order, heuristic) with a mean and std row after each group.
std::vector<BenchRow> run_bench(const BenchSpec& spec);

inline constexpr const char* kBenchCsvHeader =
    "graph,n,m,k,gamma,alpha,nu,order,heuristic,seed,lambda,rho,f,g,runtime_ms,"
    "threshold_violations,status";

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out);

// "vertex,cluster" with original labels, one row per vertex.
void write_assignment(const Graph& g, const PartitionSnapshot& snapshot, std::ostream& out);
// Reads an assignment file back into dense order. Every vertex must appear
// exactly once with a cluster id in [0, k).
std::vector<ClusterId> read_assignment(const Graph& g, std::size_t k, std::istream& in,
                                       const std::string& source_name);

// Recomputes lambda, rho, f and g of an assignment file from scratch.
RunResult eval_assignment(const Graph& g, const std::filesystem::path& assignment_path,
                          std::size_t k, const ObjectiveConfig& config);
RunResult eval_assignment(const Graph& g, std::span<const ClusterId> assignment, std::size_t k,
                          const ObjectiveConfig& config);

}  // namespace streamcut
