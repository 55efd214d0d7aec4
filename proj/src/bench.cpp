#include "streamcut/bench.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "streamcut/error.hpp"
#include "streamcut/seeding.hpp"

namespace streamcut {

namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

// Splits on whitespace and commas.
std::vector<std::string> tokens_of(std::string_view s) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : s) {
    if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double to_double(const std::string& token) {
  if (token == "inf" || token == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || token.empty()) throw InvalidArgument("not a number: '" + token + "'");
  return value;
}

std::uint64_t to_uint(const std::string& token) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw InvalidArgument("not a nonnegative integer: '" + token + "'");
  }
  return value;
}

bool to_bool(const std::string& token) {
  if (token == "true" || token == "on" || token == "yes" || token == "1") return true;
  if (token == "false" || token == "off" || token == "no" || token == "0") return false;
  throw InvalidArgument("not a boolean: '" + token + "'");
}

// "a:b:step" (inclusive, with a small tolerance on the end point) or a number.
std::vector<double> expand_reals(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const auto& t : tokens) {
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      out.push_back(to_double(t));
      continue;
    }
    auto second = t.find(':', colon + 1);
    if (second == std::string::npos) throw InvalidArgument("real range needs start:stop:step, got '" + t + "'");
    double start = to_double(t.substr(0, colon));
    double stop = to_double(t.substr(colon + 1, second - colon - 1));
    double step = to_double(t.substr(second + 1));
    if (!(step > 0.0)) throw InvalidArgument("range step must be positive in '" + t + "'");
    for (std::size_t i = 0;; ++i) {
      double x = start + static_cast<double>(i) * step;
      if (x > stop + 1e-9 * step) break;
      out.push_back(x);
    }
  }
  return out;
}

// "a:b" (inclusive) or an integer.
std::vector<std::uint64_t> expand_uints(const std::vector<std::string>& tokens) {
  std::vector<std::uint64_t> out;
  for (const auto& t : tokens) {
    auto colon = t.find(':');
    if (colon == std::string::npos) {
      out.push_back(to_uint(t));
      continue;
    }
    auto first = to_uint(t.substr(0, colon));
    auto last = to_uint(t.substr(colon + 1));
    if (last < first) throw InvalidArgument("empty integer range '" + t + "'");
    for (auto x = first; x <= last; ++x) out.push_back(x);
  }
  return out;
}

std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

GraphSource parse_graph_source(const std::string& text) {
  auto tokens = tokens_of(text);
  if (tokens.empty()) throw InvalidArgument("empty graph directive");
  GraphSource source;
  source.label = trim(text);
  const std::string& kind = tokens[0];
  auto options = std::span(tokens).subspan(1);

  if (kind == "file") {
    source.kind = GraphSource::Kind::File;
    if (options.empty()) throw InvalidArgument("graph = file needs a path");
    source.path = options[0];
    for (const auto& opt : options.subspan(1)) {
      auto eq = opt.find('=');
      if (eq == std::string::npos || opt.substr(0, eq) != "lcc") {
        throw InvalidArgument("unknown file graph option '" + opt + "'");
      }
      source.largest_component = to_bool(opt.substr(eq + 1));
    }
    return source;
  }

  bool hp = kind == "hp";
  if (!hp && kind != "cl") throw InvalidArgument("unknown graph kind '" + kind + "' (file|hp|cl)");
  source.kind = hp ? GraphSource::Kind::HiddenPartition : GraphSource::Kind::ChungLu;
  source.hp.k = 0;
  bool have_n = false;
  for (const auto& opt : options) {
    auto eq = opt.find('=');
    if (eq == std::string::npos) throw InvalidArgument("expected key=value, got '" + opt + "'");
    std::string key = opt.substr(0, eq), value = opt.substr(eq + 1);
    if (key == "n") {
      source.hp.n = source.cl.n = to_uint(value);
      have_n = true;
    } else if (hp && key == "k") {
      source.hp.k = to_uint(value);
    } else if (hp && key == "p") {
      source.hp.p = to_double(value);
    } else if (hp && key == "q") {
      source.hp.q = to_double(value);
    } else if (!hp && key == "slope") {
      source.cl.slope = to_double(value);
    } else if (!hp && (key == "avg_degree" || key == "avg-degree")) {
      source.cl.avg_degree = to_double(value);
    } else if (!hp && key == "sampling") {
      if (value == "pair") source.cl.sampling = ClSampling::PairLoop;
      else if (value == "skip") source.cl.sampling = ClSampling::Skip;
      else throw InvalidArgument("sampling must be pair or skip");
    } else {
      throw InvalidArgument("unknown " + kind + " option '" + key + "'");
    }
  }
  if (!have_n) throw InvalidArgument(kind + " graph needs n=");
  return source;
}

void BenchSpec::validate() const {
  if (graphs.empty()) throw InvalidArgument("bench spec lists no graphs");
  if (ks.empty()) throw InvalidArgument("bench spec lists no k values");
  if (gammas.empty()) throw InvalidArgument("bench spec lists no gamma values");
  if (orders.empty()) throw InvalidArgument("bench spec lists no stream orders");
  if (heuristics.empty()) throw InvalidArgument("bench spec lists no heuristics");
  if (seeds.empty()) throw InvalidArgument("bench spec lists no seeds");
  for (auto k : ks) {
    if (k == 0) throw InvalidArgument("k must be positive");
  }
  for (double gamma : gammas) {
    ObjectiveConfig c;
    c.gamma = gamma;
    c.alpha = alpha;
    c.nu = nu;
    c.validate();
  }
  if (threads == 0) throw InvalidArgument("threads must be positive");
}

BenchSpec parse_bench_spec(std::istream& in, const std::string& source_name) {
  BenchSpec spec;
  spec.gammas = {1.5};
  spec.orders = {OrderKind::Random};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError(source_name, line_no, "expected 'key = value'");
    std::string key = trim(std::string_view(body).substr(0, eq));
    std::string value = trim(std::string_view(body).substr(eq + 1));
    auto values = tokens_of(value);
    try {
      if (key == "graph") {
        spec.graphs.push_back(parse_graph_source(value));
      } else if (key == "k") {
        spec.ks.clear();
        for (auto k : expand_uints(values)) spec.ks.push_back(static_cast<std::size_t>(k));
      } else if (key == "gamma") {
        spec.gammas = expand_reals(values);
      } else if (key == "order") {
        spec.orders.clear();
        for (const auto& v : values) spec.orders.push_back(parse_order_kind(v));
      } else if (key == "heuristic") {
        spec.heuristics.clear();
        for (const auto& v : values) spec.heuristics.push_back(parse_heuristic(v));
      } else if (key == "seeds" || key == "seed") {
        spec.seeds = expand_uints(values);
      } else if (key == "alpha") {
        if (value == "auto") spec.alpha.reset();
        else spec.alpha = to_double(value);
      } else if (key == "nu") {
        spec.nu = to_double(value);
      } else if (key == "size_mode") {
        spec.size_mode = parse_size_mode(value);
      } else if (key == "marginal_mode") {
        spec.marginal_mode = parse_marginal_mode(value);
      } else if (key == "tie_policy") {
        spec.tie_policy = parse_tie_policy(value);
      } else if (key == "threads") {
        spec.threads = static_cast<std::size_t>(to_uint(value));
      } else if (key == "record_runtime") {
        spec.record_runtime = to_bool(value);
      } else if (key == "output") {
        spec.output = value;
      } else {
        throw InvalidArgument("unknown key '" + key + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(source_name, line_no, e.what());
    }
  }
  spec.validate();
  return spec;
}

BenchSpec load_bench_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open bench spec: " + path.string());
  return parse_bench_spec(in, path.string());
}

std::vector<BenchRow> run_bench(const BenchSpec& spec) {
  spec.validate();
  const std::size_t n_graphs = spec.graphs.size(), n_k = spec.ks.size(), n_seeds = spec.seeds.size();
  const std::size_t n_gamma = spec.gammas.size(), n_order = spec.orders.size(),
                    n_heur = spec.heuristics.size();

  // File graphs are loaded once and shared read-only.
  std::vector<std::shared_ptr<const Graph>> loaded(n_graphs);
  std::vector<std::string> load_errors(n_graphs);
  for (std::size_t gi = 0; gi < n_graphs; ++gi) {
    const auto& src = spec.graphs[gi];
    if (src.kind != GraphSource::Kind::File) continue;
    try {
      loaded[gi] = std::make_shared<const Graph>(load_edge_list(src.path, {src.largest_component}));
    } catch (const std::exception& e) {
      load_errors[gi] = e.what();
    }
  }

  // Result slot for (graph, k, gamma, order, heuristic, seed).
  auto slot = [&](std::size_t gi, std::size_t ki, std::size_t ga, std::size_t oi, std::size_t hi,
                  std::size_t si) {
    return ((((gi * n_k + ki) * n_gamma + ga) * n_order + oi) * n_heur + hi) * n_seeds + si;
  };
  std::vector<BenchRow> runs(n_graphs * n_k * n_gamma * n_order * n_heur * n_seeds);

  const std::size_t instances = n_graphs * n_k * n_seeds;
  auto work = [&](std::size_t instance) {
    const std::size_t si = instance % n_seeds;
    const std::size_t ki = (instance / n_seeds) % n_k;
    const std::size_t gi = instance / (n_seeds * n_k);
    const auto& src = spec.graphs[gi];
    const std::size_t k = spec.ks[ki];
    const std::uint64_t seed = spec.seeds[si];

    auto fill_meta = [&](BenchRow& row, std::size_t ga, std::size_t oi, std::size_t hi) {
      row.result.graph = src.label;
      row.result.k = k;
      row.result.gamma = spec.gammas[ga];
      row.result.nu = spec.nu;
      row.result.order = std::string(to_string(spec.orders[oi]));
      row.result.heuristic = std::string(to_string(spec.heuristics[hi]));
      row.result.seed = seed;
    };
    auto fail_all = [&](const std::string& message) {
      for (std::size_t ga = 0; ga < n_gamma; ++ga)
        for (std::size_t oi = 0; oi < n_order; ++oi)
          for (std::size_t hi = 0; hi < n_heur; ++hi) {
            auto& row = runs[slot(gi, ki, ga, oi, hi, si)];
            fill_meta(row, ga, oi, hi);
            row.kind = BenchRow::Kind::Failed;
            row.message = message;
          }
    };

    std::shared_ptr<const Graph> graph;
    try {
      switch (src.kind) {
        case GraphSource::Kind::File:
          if (!loaded[gi]) {
            fail_all(load_errors[gi]);
            return;
          }
          graph = loaded[gi];
          break;
        case GraphSource::Kind::HiddenPartition: {
          HpParams params = src.hp;
          if (params.k == 0) params.k = k;
          params.seed = derive_seed(seed, SeedPurpose::Graph);
          graph = std::make_shared<const Graph>(generate_hp(params).graph);
          break;
        }
        case GraphSource::Kind::ChungLu: {
          ClParams params = src.cl;
          params.seed = derive_seed(seed, SeedPurpose::Graph);
          graph = std::make_shared<const Graph>(generate_cl(params).graph);
          break;
        }
      }
    } catch (const std::exception& e) {
      fail_all(e.what());
      return;
    }

    for (std::size_t oi = 0; oi < n_order; ++oi) {
      StreamPlan plan;
      try {
        plan = make_stream(*graph, spec.orders[oi], derive_seed(seed, SeedPurpose::Order));
      } catch (const std::exception& e) {
        for (std::size_t ga = 0; ga < n_gamma; ++ga)
          for (std::size_t hi = 0; hi < n_heur; ++hi) {
            auto& row = runs[slot(gi, ki, ga, oi, hi, si)];
            fill_meta(row, ga, oi, hi);
            row.kind = BenchRow::Kind::Failed;
            row.message = e.what();
          }
        continue;
      }
      for (std::size_t ga = 0; ga < n_gamma; ++ga) {
        for (std::size_t hi = 0; hi < n_heur; ++hi) {
          auto& row = runs[slot(gi, ki, ga, oi, hi, si)];
          fill_meta(row, ga, oi, hi);
          try {
            ObjectiveConfig config;
            config.gamma = spec.gammas[ga];
            config.alpha = spec.alpha;
            config.nu = spec.nu;
            config.size_mode = spec.size_mode;
            config.marginal_mode = spec.marginal_mode;
            CostModel model = resolve(config, *graph, k);
            auto run = partition_stream(*graph, plan, k, spec.heuristics[hi], model,
                                        derive_seed(seed, SeedPurpose::Run), spec.tie_policy);
            score_partition(*graph, run.snapshot, model, row.result);
            row.result.runtime_ms = spec.record_runtime ? run.runtime_ms : 0.0;
            row.result.threshold_violations = run.threshold_violations;
            row.kind = BenchRow::Kind::Run;
          } catch (const std::exception& e) {
            row.kind = BenchRow::Kind::Failed;
            row.message = e.what();
          }
        }
      }
    }
  };

  const std::size_t workers = std::min(spec.threads, instances);
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (std::size_t i = next++; i < instances; i = next++) work(i);
  };
  if (workers <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(drain);
  }

  std::vector<BenchRow> rows;
  rows.reserve(runs.size() + 2 * runs.size() / n_seeds);
  for (std::size_t gi = 0; gi < n_graphs; ++gi)
    for (std::size_t ki = 0; ki < n_k; ++ki)
      for (std::size_t ga = 0; ga < n_gamma; ++ga)
        for (std::size_t oi = 0; oi < n_order; ++oi)
          for (std::size_t hi = 0; hi < n_heur; ++hi) {
            std::vector<const RunResult*> ok;
            for (std::size_t si = 0; si < n_seeds; ++si) {
              const auto& row = runs[slot(gi, ki, ga, oi, hi, si)];
              rows.push_back(row);
              if (row.kind == BenchRow::Kind::Run) ok.push_back(&row.result);
            }
            if (ok.empty()) continue;
            auto column = [&](auto member) {
              std::vector<double> xs;
              for (const auto* r : ok) xs.push_back(static_cast<double>(r->*member));
              return summarize(xs);
            };
            BenchRow mean{BenchRow::Kind::Mean, *ok.front(), {}};
            BenchRow sd{BenchRow::Kind::Std, *ok.front(), {}};
            auto both = [&](auto member) {
              auto s = column(member);
              mean.result.*member = static_cast<std::remove_reference_t<decltype(mean.result.*member)>>(s.mean);
              sd.result.*member = static_cast<std::remove_reference_t<decltype(sd.result.*member)>>(s.stddev);
            };
            both(&RunResult::alpha);
            both(&RunResult::lambda);
            both(&RunResult::rho);
            both(&RunResult::f_value);
            both(&RunResult::g_value);
            both(&RunResult::runtime_ms);
            mean.n_mean = column(&RunResult::n).mean;
            mean.m_mean = column(&RunResult::m).mean;
            sd.n_mean = column(&RunResult::n).stddev;
            sd.m_mean = column(&RunResult::m).stddev;
            mean.violations_mean = column(&RunResult::threshold_violations).mean;
            sd.violations_mean = column(&RunResult::threshold_violations).stddev;
            rows.push_back(std::move(mean));
            rows.push_back(std::move(sd));
          }
  return rows;
}

void write_bench_csv(std::span<const BenchRow> rows, std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const auto& row : rows) {
    const auto& r = row.result;
    const bool aggregate = row.kind == BenchRow::Kind::Mean || row.kind == BenchRow::Kind::Std;
    out << csv_field(r.graph) << ',';
    if (aggregate) {
      out << format_real(row.n_mean) << ',' << format_real(row.m_mean) << ',';
    } else if (row.kind == BenchRow::Kind::Failed) {
      out << ",,";
    } else {
      out << r.n << ',' << r.m << ',';
    }
    out << r.k << ',' << format_real(r.gamma) << ',';
    out << (row.kind == BenchRow::Kind::Failed ? "" : format_real(r.alpha)) << ',';
    out << format_real(r.nu) << ',' << r.order << ',' << r.heuristic << ',';
    switch (row.kind) {
      case BenchRow::Kind::Mean: out << "mean"; break;
      case BenchRow::Kind::Std: out << "std"; break;
      default: out << r.seed; break;
    }
    out << ',';
    if (row.kind == BenchRow::Kind::Failed) {
      out << ",,,,,," << csv_field("error: " + row.message) << '\n';
      continue;
    }
    out << format_real(r.lambda) << ',' << format_real(r.rho) << ',' << format_real(r.f_value) << ','
        << format_real(r.g_value) << ',' << format_real(r.runtime_ms) << ',';
    if (aggregate) out << format_real(row.violations_mean);
    else out << r.threshold_violations;
    out << ',' << (aggregate ? "aggregate" : "ok") << '\n';
  }
}

void write_assignment(const Graph& g, const PartitionSnapshot& snapshot, std::ostream& out) {
  if (snapshot.num_vertices() != g.num_vertices()) {
    throw InvalidArgument("snapshot does not match graph");
  }
  out << "vertex,cluster\n";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << g.label(v) << ',' << snapshot.cluster_of(v) << '\n';
  }
}

std::vector<ClusterId> read_assignment(const Graph& g, std::size_t k, std::istream& in,
                                       const std::string& source_name) {
  std::vector<ClusterId> assignment(g.num_vertices(), kUnassigned);
  std::string line;
  std::size_t line_no = 0;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (line_no == 1 && body == "vertex,cluster") continue;
    auto comma = body.find(',');
    if (comma == std::string::npos) throw ParseError(source_name, line_no, "expected 'vertex,cluster'");
    std::uint64_t label = 0, cluster = 0;
    try {
      label = to_uint(trim(std::string_view(body).substr(0, comma)));
      cluster = to_uint(trim(std::string_view(body).substr(comma + 1)));
    } catch (const Error& e) {
      throw ParseError(source_name, line_no, e.what());
    }
    auto v = g.index_of(label);
    if (!v) throw ParseError(source_name, line_no, "vertex " + std::to_string(label) + " is not in the graph");
    if (cluster >= k) {
      throw ParseError(source_name, line_no,
                       "cluster " + std::to_string(cluster) + " out of range [0, " + std::to_string(k) + ")");
    }
    if (assignment[*v] != kUnassigned) {
      throw ParseError(source_name, line_no, "vertex " + std::to_string(label) + " assigned twice");
    }
    assignment[*v] = static_cast<ClusterId>(cluster);
    ++seen;
  }
  if (seen != g.num_vertices()) {
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (assignment[v] == kUnassigned) {
        throw InvalidArgument(source_name + ": vertex " + std::to_string(g.label(v)) + " has no cluster (" +
                              std::to_string(g.num_vertices() - seen) + " missing)");
      }
    }
  }
  return assignment;
}

RunResult eval_assignment(const Graph& g, std::span<const ClusterId> assignment, std::size_t k,
                          const ObjectiveConfig& config) {
  CostModel model = resolve(config, g, k);
  auto snapshot = PartitionSnapshot::from_assignment(g, k, assignment);
  if (!snapshot.fully_assigned()) throw InvalidArgument("assignment does not cover every vertex");
  RunResult result;
  result.heuristic = "eval";
  score_partition(g, snapshot, model, result);
  return result;
}

RunResult eval_assignment(const Graph& g, const std::filesystem::path& assignment_path, std::size_t k,
                          const ObjectiveConfig& config) {
  std::ifstream in(assignment_path);
  if (!in) throw Error("cannot open assignment file: " + assignment_path.string());
  auto assignment = read_assignment(g, k, in, assignment_path.string());
  auto result = eval_assignment(g, assignment, k, config);
  result.graph = assignment_path.string();
  return result;
}

}  // namespace streamcut
