#include "acthom/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "acthom/error.hpp"

namespace acthom {

namespace {

struct Point {
  double birth;
  double death;
};

double linf(const Point& p, const Point& q) {
  return std::max(std::abs(p.birth - q.birth), std::abs(p.death - q.death));
}

double to_diagonal(const Point& p) { return (p.death - p.birth) / 2.0; }

// Hopcroft-Karp on a square bipartite graph given as adjacency lists.
class Matcher {
 public:
  explicit Matcher(const std::vector<std::vector<std::size_t>>& adj)
      : adj_(adj), size_(adj.size()), left_(size_, kFree), right_(size_, kFree), layer_(size_) {}

  bool perfect() {
    std::size_t matched = 0;
    while (bfs())
      for (std::size_t u = 0; u < size_; ++u)
        if (left_[u] == kFree && dfs(u)) ++matched;
    return matched == size_;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::deque<std::size_t> queue;
    bool reachable_free = false;
    for (std::size_t u = 0; u < size_; ++u) {
      layer_[u] = left_[u] == kFree ? 0 : kFree;
      if (left_[u] == kFree) queue.push_back(u);
    }
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : adj_[u]) {
        const std::size_t next = right_[v];
        if (next == kFree) {
          reachable_free = true;
        } else if (layer_[next] == kFree) {
          layer_[next] = layer_[u] + 1;
          queue.push_back(next);
        }
      }
    }
    return reachable_free;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t next = right_[v];
      if (next == kFree || (layer_[next] == layer_[u] + 1 && dfs(next))) {
        left_[u] = v;
        right_[v] = u;
        return true;
      }
    }
    layer_[u] = kFree;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::size_t size_;
  std::vector<std::size_t> left_, right_, layer_;
};

// Left side: a's points then one diagonal slot per b point. Right side: b's
// points then one diagonal slot per a point.
double cost(const std::vector<Point>& a, const std::vector<Point>& b, std::size_t u,
            std::size_t v) {
  const std::size_t m = a.size(), n = b.size();
  if (u < m && v < n) return linf(a[u], b[v]);
  if (u < m) return v - n == u ? to_diagonal(a[u]) : kInfinity;
  if (v < n) return u - m == v ? to_diagonal(b[v]) : kInfinity;
  return 0.0;
}

bool feasible(const std::vector<Point>& a, const std::vector<Point>& b, double threshold) {
  const std::size_t size = a.size() + b.size();
  std::vector<std::vector<std::size_t>> adj(size);
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t v = 0; v < size; ++v)
      if (cost(a, b, u, v) <= threshold) adj[u].push_back(v);
  return Matcher(adj).perfect();
}

double finite_bottleneck(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<double> candidates{0.0};
  for (const auto& p : a) candidates.push_back(to_diagonal(p));
  for (const auto& q : b) candidates.push_back(to_diagonal(q));
  for (const auto& p : a)
    for (const auto& q : b) candidates.push_back(linf(p, q));
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t lo = 0, hi = candidates.size() - 1;  // matching everything to the diagonal is feasible at hi
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (feasible(a, b, candidates[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return candidates[lo];
}

}  // namespace

double bottleneck_distance(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  std::vector<Point> fa, fb;
  std::vector<double> ea, eb;
  for (const auto& p : a.in_dim(dim, false))
    p.essential() ? ea.push_back(p.birth) : fa.push_back({p.birth, p.death});
  for (const auto& p : b.in_dim(dim, false))
    p.essential() ? eb.push_back(p.birth) : fb.push_back({p.birth, p.death});
  if (ea.size() != eb.size()) return kInfinity;
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) essential = std::max(essential, std::abs(ea[i] - eb[i]));
  return std::max(essential, finite_bottleneck(fa, fb));
}

std::pair<std::size_t, double> select_min_distance(const PersistenceDiagram& query,
                                                   std::span<const PersistenceDiagram> bank,
                                                   int dim) {
  if (bank.empty()) throw InvalidParameter("classifier bank is empty");
  std::size_t best = 0;
  double best_distance = bottleneck_distance(query, bank[0], dim);
  for (std::size_t i = 1; i < bank.size(); ++i) {
    const double d = bottleneck_distance(query, bank[i], dim);
    if (d < best_distance) {
      best = i;
      best_distance = d;
    }
  }
  return {best, best_distance};
}

}  // namespace acthom
