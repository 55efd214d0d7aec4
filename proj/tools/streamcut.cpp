#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "streamcut/bench.hpp"
#include "streamcut/error.hpp"
#include "streamcut/generators.hpp"
#include "streamcut/graph.hpp"
#include "streamcut/metrics.hpp"
#include "streamcut/objective.hpp"
#include "streamcut/oracle.hpp"
#include "streamcut/partitioner.hpp"
#include "streamcut/sdp.hpp"
#include "streamcut/seeding.hpp"
#include "streamcut/stream_order.hpp"

namespace sc = streamcut;

namespace {

struct ObjectiveFlags {
  double gamma = 1.5;
  std::string alpha = "auto";
  std::string nu = "inf";
  std::string size_mode = "vertex";
  std::string marginal_mode = "derivative";

  void add_to(CLI::App* app) {
    app->add_option("--gamma", gamma, "cost exponent (>= 1)")->capture_default_str();
    app->add_option("--alpha", alpha, "cost scale, a number or 'auto'")->capture_default_str();
    app->add_option("--nu", nu, "load cap factor, a number or 'inf'")->capture_default_str();
    app->add_option("--size-mode", size_mode, "vertex|interior-edge")->capture_default_str();
    app->add_option("--marginal-mode", marginal_mode, "derivative|discrete")->capture_default_str();
  }

  sc::ObjectiveConfig config() const {
    sc::ObjectiveConfig c;
    c.gamma = gamma;
    if (alpha != "auto") c.alpha = parse_real(alpha, "--alpha");
    c.nu = nu == "inf" ? std::numeric_limits<double>::infinity() : parse_real(nu, "--nu");
    c.size_mode = sc::parse_size_mode(size_mode);
    c.marginal_mode = sc::parse_marginal_mode(marginal_mode);
    c.validate();
    return c;
  }

  static double parse_real(const std::string& text, const char* flag) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw sc::InvalidArgument(std::string(flag) + ": expected a number, got '" + text + "'");
    }
    return v;
  }
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw sc::Error("cannot write " + path);
  return out;
}

void print_result(const sc::RunResult& r) {
  std::printf("n=%zu m=%zu k=%zu\n", r.n, r.m, r.k);
  std::printf("lambda=%.6f rho=%.6f\n", r.lambda, r.rho);
  std::printf("f=%.6f g=%.6f alpha=%.6g gamma=%.6g\n", r.f_value, r.g_value, r.alpha, r.gamma);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streamcut: one-pass graph partitioning toolkit"};
  app.require_subcommand(1);

  // partition
  auto* part = app.add_subcommand("partition", "stream a graph into k clusters");
  std::string graph_path, out_path, heuristic = "fennel", order = "random", ties = "lowest-index";
  std::size_t k = 2;
  std::uint64_t seed = 0;
  bool no_lcc = false;
  ObjectiveFlags part_obj;
  part->add_option("--graph", graph_path, "edge list file")->required();
  part->add_option("--k", k, "number of clusters")->required();
  part->add_option("--heuristic", heuristic, "fennel|hash|balanced|dg|ldg|edg|t|lt|et|nn")
      ->capture_default_str();
  part->add_option("--order", order, "random|bfs|dfs")->capture_default_str();
  part->add_option("--tie-policy", ties, "lowest-index|min-load")->capture_default_str();
  part->add_option("--seed", seed, "seed for the stream and the heuristic")->capture_default_str();
  part->add_option("--out", out_path, "write vertex,cluster CSV here");
  part->add_flag("--no-lcc", no_lcc, "keep every component");
  part_obj.add_to(part);

  // generate
  auto* gen = app.add_subcommand("generate", "synthetic graphs");
  gen->require_subcommand(1);
  auto* gen_hp = gen->add_subcommand("hp", "hidden partition model");
  sc::HpParams hp;
  std::string hp_out, hp_labels;
  gen_hp->add_option("--n", hp.n)->required();
  gen_hp->add_option("--k", hp.k)->required();
  gen_hp->add_option("--p", hp.p, "within-cluster edge probability")->required();
  gen_hp->add_option("--q", hp.q, "cross-cluster edge probability")->required();
  gen_hp->add_option("--seed", hp.seed)->capture_default_str();
  gen_hp->add_option("--out", hp_out)->required();
  gen_hp->add_option("--labels", hp_labels, "write vertex,cluster planted labels here");
  auto* gen_cl = gen->add_subcommand("cl", "Chung-Lu power law model");
  sc::ClParams cl;
  std::string cl_out, cl_sampling = "pair";
  gen_cl->add_option("--n", cl.n)->required();
  gen_cl->add_option("--slope", cl.slope)->capture_default_str();
  gen_cl->add_option("--avg-degree", cl.avg_degree)->capture_default_str();
  gen_cl->add_option("--sampling", cl_sampling, "pair|skip")->capture_default_str();
  gen_cl->add_option("--seed", cl.seed)->capture_default_str();
  gen_cl->add_option("--out", cl_out)->required();

  // eval
  auto* eval = app.add_subcommand("eval", "score an assignment file");
  std::string eval_graph, eval_assign;
  std::size_t eval_k = 2;
  bool eval_no_lcc = false;
  ObjectiveFlags eval_obj;
  eval->add_option("--graph", eval_graph)->required();
  eval->add_option("--assignment", eval_assign)->required();
  eval->add_option("--k", eval_k)->required();
  eval->add_flag("--no-lcc", eval_no_lcc);
  eval_obj.add_to(eval);

  // oracle
  auto* orc = app.add_subcommand("oracle", "exhaustive optimum for tiny graphs");
  std::string orc_graph;
  std::size_t orc_k = 2;
  bool orc_no_lcc = false;
  ObjectiveFlags orc_obj;
  orc->add_option("--graph", orc_graph)->required();
  orc->add_option("--k", orc_k)->required();
  orc->add_flag("--no-lcc", orc_no_lcc);
  orc_obj.add_to(orc);

  // sdp
  auto* sdp = app.add_subcommand("sdp", "SDP relaxation and hyperplane rounding");
  std::string sdp_graph;
  std::size_t sdp_k = 2, trials = 10000;
  double sdp_alpha = 0.5;
  std::uint64_t sdp_seed = 0;
  bool sdp_no_lcc = false;
  sdp->add_option("--graph", sdp_graph)->required();
  sdp->add_option("--k", sdp_k, "power of two")->required();
  sdp->add_option("--alpha", sdp_alpha)->capture_default_str();
  sdp->add_option("--trials", trials)->capture_default_str();
  sdp->add_option("--seed", sdp_seed)->capture_default_str();
  sdp->add_flag("--no-lcc", sdp_no_lcc);

  // bench
  auto* bench = app.add_subcommand("bench", "run an experiment matrix");
  std::string bench_spec, bench_out;
  bench->add_option("spec", bench_spec, "bench file")->required();
  bench->add_option("--out", bench_out, "CSV path (overrides the spec's output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*part) {
      sc::Graph g = sc::load_edge_list(graph_path, {.largest_component = !no_lcc});
      auto config = part_obj.config();
      auto h = sc::parse_heuristic(heuristic);
      auto kind = sc::parse_order_kind(order);
      auto plan = sc::make_stream(g, kind, sc::derive_seed(seed, sc::SeedPurpose::Order));
      auto model = sc::resolve(config, g, k);
      auto run = sc::partition_stream(g, plan, k, h, model, sc::derive_seed(seed, sc::SeedPurpose::Run),
                                      sc::parse_tie_policy(ties));
      sc::RunResult r;
      sc::score_partition(g, run.snapshot, model, r);
      print_result(r);
      std::printf("runtime_ms=%.3f threshold_violations=%llu\n", run.runtime_ms,
                  static_cast<unsigned long long>(run.threshold_violations));
      if (!out_path.empty()) {
        auto out = open_output(out_path);
        sc::write_assignment(g, run.snapshot, out);
      }
    } else if (*gen_hp) {
      auto result = sc::generate_hp(hp);
      auto out = open_output(hp_out);
      sc::write_edge_list(result.graph, out);
      if (!hp_labels.empty()) {
        auto lab = open_output(hp_labels);
        lab << "vertex,cluster\n";
        for (sc::VertexId v = 0; v < result.labels.size(); ++v) lab << v << ',' << result.labels[v] << '\n';
      }
      std::printf("n=%zu m=%zu\n", result.graph.num_vertices(), result.graph.num_edges());
    } else if (*gen_cl) {
      if (cl_sampling == "pair") cl.sampling = sc::ClSampling::PairLoop;
      else if (cl_sampling == "skip") cl.sampling = sc::ClSampling::Skip;
      else throw sc::InvalidArgument("--sampling must be pair or skip");
      auto result = sc::generate_cl(cl);
      auto out = open_output(cl_out);
      out << "# chung-lu n=" << cl.n << " slope=" << cl.slope << " avg_degree=" << cl.avg_degree
          << " seed=" << cl.seed << '\n';
      out << "# i0=" << result.weights.offset << " c=" << result.weights.scale
          << " W=" << result.weights.total << '\n';
      sc::write_edge_list(result.graph, out);
      std::printf("n=%zu m=%zu\n", result.graph.num_vertices(), result.graph.num_edges());
    } else if (*eval) {
      sc::Graph g = sc::load_edge_list(eval_graph, {.largest_component = !eval_no_lcc});
      print_result(sc::eval_assignment(g, eval_assign, eval_k, eval_obj.config()));
    } else if (*orc) {
      sc::Graph g = sc::load_edge_list(orc_graph, {.largest_component = !orc_no_lcc});
      auto model = sc::resolve(orc_obj.config(), g, orc_k);
      auto best = sc::brute_force_optimal(g, orc_k, model);
      std::printf("best_f=%.9g best_g=%.9g best_g_shifted=%.9g enumerated=%llu\n", best.best_f,
                  best.best_g, best.best_g_shifted,
                  static_cast<unsigned long long>(best.partitions_enumerated));
      std::printf("vertex,cluster\n");
      for (sc::VertexId v = 0; v < g.num_vertices(); ++v) {
        std::printf("%llu,%u\n", static_cast<unsigned long long>(g.label(v)), best.best_assignment[v]);
      }
    } else if (*sdp) {
      sc::Graph g = sc::load_edge_list(sdp_graph, {.largest_component = !sdp_no_lcc});
      sc::hyperplane_count(sdp_k);
      if (g.num_vertices() > sc::kMaxSdpDimension) {
        throw sc::InstanceTooLarge("sdp accepts at most " + std::to_string(sc::kMaxSdpDimension) +
                                   " vertices");
      }
      sc::SdpProblem problem{std::move(g), sdp_alpha};
      auto sol = sc::solve_sdp(problem);
      auto rounding = sc::round_hyperplanes(problem, sol, sdp_k, sdp_seed, trials);
      double bound = sc::approximation_ratio_bound(sdp_k);
      double sigma = rounding.stddev / std::sqrt(static_cast<double>(std::max<std::size_t>(trials, 1)));
      bool pass = rounding.mean >= bound * sol.sdp_value - 3.0 * sigma;
      std::printf("sdp_value=%.9f residual=%.3g converged=%d iterations=%d\n", sol.sdp_value,
                  sol.feasibility_residual, sol.converged ? 1 : 0, sol.iterations);
      std::printf("mean_g_shifted=%.9f stddev=%.9f trials=%zu\n", rounding.mean, rounding.stddev, trials);
      std::printf("bound=%.9f target=%.9f %s\n", bound, bound * sol.sdp_value, pass ? "PASS" : "FAIL");
      return pass ? 0 : 2;
    } else if (*bench) {
      auto spec = sc::load_bench_spec(bench_spec);
      if (!bench_out.empty()) spec.output = bench_out;
      auto rows = sc::run_bench(spec);
      if (spec.output.empty() || spec.output == "-") {
        sc::write_bench_csv(rows, std::cout);
      } else {
        auto out = open_output(spec.output);
        sc::write_bench_csv(rows, out);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "streamcut: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
