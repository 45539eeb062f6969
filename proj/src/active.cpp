#include "acthom/active.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>

#include "acthom/error.hpp"
#include "acthom/io.hpp"
#include "acthom/rng.hpp"

namespace acthom {

std::vector<std::size_t> QueryLog::queried_indices() const {
  std::vector<std::size_t> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.vertex);
  return out;
}

std::vector<Label> QueryLog::queried_labels() const {
  std::vector<Label> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label);
  return out;
}

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Multi-source BFS from every vertex carrying `label`.
std::vector<int> distances_to_class(const NeighborGraph& graph,
                                    std::span<const std::optional<Label>> labeled, Label label) {
  std::vector<int> dist(graph.vertex_count(), kUnreached);
  std::deque<Vertex> queue;
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    if (labeled[v] && *labeled[v] == label) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex u : graph.neighbors(v)) {
      if (dist[u] == kUnreached) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<Vertex> mssp(const NeighborGraph& graph,
                           std::span<const std::optional<Label>> labeled) {
  const std::size_t n = graph.vertex_count();
  if (labeled.size() != n) throw InvalidParameter("partial label map does not match graph");

  const std::vector<int> to_zero = distances_to_class(graph, labeled, 0);
  const std::vector<int> to_one = distances_to_class(graph, labeled, 1);

  // Shortest opposite-pair length and the smallest vertex attaining it; that
  // vertex is necessarily the smaller end of the lexicographically first pair.
  int best = kUnreached;
  for (Vertex v = 0; v < n; ++v) {
    if (!labeled[v]) continue;
    best = std::min(best, *labeled[v] ? to_zero[v] : to_one[v]);
  }
  if (best == kUnreached || best <= 1) return std::nullopt;

  Vertex first = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (labeled[v] && (*labeled[v] ? to_zero[v] : to_one[v]) == best) {
      first = v;
      break;
    }
  }
  const Label opposite = *labeled[first] ? 0 : 1;
  const std::vector<int> from_first = bfs_distances(graph, first);
  Vertex second = first;
  for (Vertex v = first + 1; v < n; ++v) {
    if (labeled[v] && *labeled[v] == opposite && from_first[v] == best) {
      second = v;
      break;
    }
  }
  const auto path = shortest_path(graph, first, second);
  return (*path)[static_cast<std::size_t>(best) / 2];
}

namespace {

class QueryState {
 public:
  QueryState(const NeighborGraph& graph, const LabelOracle& oracle, std::size_t budget)
      : work_(graph), oracle_(oracle), labels_(graph.vertex_count()),
        pool_(graph.vertex_count()), pool_pos_(graph.vertex_count()) {
    std::iota(pool_.begin(), pool_.end(), Vertex{0});
    std::iota(pool_pos_.begin(), pool_pos_.end(), std::size_t{0});
    log_.budget = budget;
  }

  bool exhausted() const { return log_.size() >= log_.budget || pool_.empty(); }

  Vertex draw(SplitMix64& rng) const { return pool_[rng.below(pool_.size())]; }

  void query(Vertex v, QueryPhase phase) {
    const Label y = oracle_.query(v);
    labels_[v] = y;
    log_.entries.push_back({v, y, phase});
    remove_from_pool(v);
    const std::vector<Vertex> neighbors(work_.neighbors(v).begin(), work_.neighbors(v).end());
    for (Vertex u : neighbors) {
      if (labels_[u] && *labels_[u] != y) {
        work_.remove_edge(v, u);
        log_.found_cut_edges.push_back(Edge::make(v, u));
      }
    }
  }

  const NeighborGraph& working_graph() const { return work_; }
  const PartialLabels& labels() const { return labels_; }
  QueryLog take_log() { return std::move(log_); }

 private:
  void remove_from_pool(Vertex v) {
    const std::size_t at = pool_pos_[v];
    const Vertex last = pool_.back();
    pool_[at] = last;
    pool_pos_[last] = at;
    pool_.pop_back();
  }

  NeighborGraph work_;
  const LabelOracle& oracle_;
  PartialLabels labels_;
  std::vector<Vertex> pool_;
  std::vector<std::size_t> pool_pos_;
  QueryLog log_;
};

}  // namespace

QueryLog s2_run(const NeighborGraph& graph, const LabelOracle& oracle, std::size_t budget,
                std::uint64_t seed) {
  if (budget > graph.vertex_count()) throw InvalidParameter("budget exceeds vertex count");
  if (oracle.size() != graph.vertex_count())
    throw InvalidParameter("oracle does not cover the graph");
  SplitMix64 rng(seed);
  QueryState state(graph, oracle, budget);
  while (!state.exhausted()) {
    state.query(state.draw(rng), QueryPhase::kUniform);
    while (!state.exhausted()) {
      const auto mid = mssp(state.working_graph(), state.labels());
      if (!mid) break;
      state.query(*mid, QueryPhase::kBisect);
    }
  }
  return state.take_log();
}

QueryLog passive_run(const LabeledPointCloud& cloud, const LabelOracle& oracle, std::size_t budget,
                     std::uint64_t seed) {
  const std::size_t n = cloud.size();
  if (budget > n) throw InvalidParameter("budget exceeds point count");
  if (oracle.size() != n) throw InvalidParameter("oracle does not cover the cloud");
  SplitMix64 rng(seed);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  QueryLog log;
  log.budget = budget;
  for (std::size_t i = 0; i < budget; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(order[i], order[j]);
    log.entries.push_back({order[i], oracle.query(order[i]), QueryPhase::kUniform});
  }
  return log;
}

std::string phase_name(QueryPhase phase) {
  return phase == QueryPhase::kUniform ? "uniform" : "bisect";
}

std::string format_query_log_csv(const QueryLog& log) {
  std::string out = "step,vertex,label,phase\n";
  for (std::size_t s = 0; s < log.entries.size(); ++s) {
    const auto& e = log.entries[s];
    out += std::to_string(s) + ',' + std::to_string(e.vertex) + ',' + (e.label ? '1' : '0') + ',' +
           phase_name(e.phase) + '\n';
  }
  return out;
}

QueryLog parse_query_log_csv(const std::string& text) {
  QueryLog log;
  for (const auto& line : io::lines(text)) {
    if (line.text.rfind("step", 0) == 0) continue;
    const auto f = io::split_commas(line.text);
    std::size_t step, vertex, label;
    if (f.size() != 4 || !io::parse_index(f[0], step) || !io::parse_index(f[1], vertex) ||
        !io::parse_index(f[2], label))
      throw ParseError("expected `step,vertex,label,phase`", line.number);
    if (step != log.entries.size()) throw ParseError("steps must be consecutive", line.number);
    if (label > 1) throw ParseError("label must be 0 or 1", line.number);
    QueryPhase phase;
    if (f[3] == "uniform") {
      phase = QueryPhase::kUniform;
    } else if (f[3] == "bisect") {
      phase = QueryPhase::kBisect;
    } else {
      throw ParseError("unknown phase", line.number);
    }
    log.entries.push_back({static_cast<Vertex>(vertex), static_cast<Label>(label), phase});
  }
  log.budget = log.entries.size();
  return log;
}

void save_query_log(const QueryLog& log, const std::filesystem::path& path) {
  io::write_text(path, format_query_log_csv(log));
}

QueryLog load_query_log(const std::filesystem::path& path) {
  return parse_query_log_csv(io::read_text(path));
}

}  // namespace acthom
