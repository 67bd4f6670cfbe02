#include "trnrp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace trnrp {
namespace {

// Penalty rounds before falling back to a greedy degree-bounded Kruskal.
constexpr int kMaxPenaltyRounds = 1000;

class LengthMatrix {
 public:
  explicit LengthMatrix(std::span<const GeoPoint> points)
      : n_(points.size()), data_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) set(i, j, distance(points[i], points[j]));
    }
  }
  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) {
    data_[i * n_ + j] = v;
    data_[j * n_ + i] = v;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

SpanningTree prim(const LengthMatrix& len) {
  const std::size_t n = len.size();
  SpanningTree tree{static_cast<int>(n), {}};
  if (n == 0) return tree;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<int> link(n, -1);
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (u == n || best[v] < best[u])) u = v;
    }
    in_tree[u] = true;
    if (link[u] >= 0) tree.edges.emplace_back(std::min<int>(link[u], u), std::max<int>(link[u], u));
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && len(u, v) < best[v]) {
        best[v] = len(u, v);
        link[v] = static_cast<int>(u);
      }
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

bool degrees_within(const SpanningTree& tree, int bound) {
  const auto deg = tree.degrees();
  return std::all_of(deg.begin(), deg.end(), [bound](int d) { return d <= bound; });
}

// Kruskal over the original lengths, skipping edges that would exceed the bound.
// With bound >= 2 every component keeps a leaf of spare degree, so it always spans.
SpanningTree greedy_degree_bounded(const LengthMatrix& len, int bound) {
  const std::size_t n = len.size();
  std::vector<std::pair<int, int>> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) candidates.emplace_back(i, j);
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const auto& a, const auto& b) {
    return len(a.first, a.second) < len(b.first, b.second);
  });
  std::vector<int> root(n);
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  std::vector<int> degree(n, 0);
  SpanningTree tree{static_cast<int>(n), {}};
  for (const auto& [u, v] : candidates) {
    if (degree[u] >= bound || degree[v] >= bound) continue;
    const int ru = find(u);
    const int rv = find(v);
    if (ru == rv) continue;
    root[ru] = rv;
    ++degree[u];
    ++degree[v];
    tree.edges.emplace_back(u, v);
    if (tree.edges.size() + 1 == n) break;
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

}  // namespace

std::vector<int> SpanningTree::degrees() const {
  std::vector<int> deg(size, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

double SpanningTree::total_length(std::span<const GeoPoint> points) const {
  double total = 0.0;
  for (const auto& [u, v] : edges) total += distance(points[u], points[v]);
  return total;
}

std::vector<GeoPoint> generate_points(const Region& region, int n, Rng& rng) {
  region.validate();
  if (n < 0) throw std::invalid_argument("point count must be non-negative");
  std::vector<GeoPoint> points;
  points.reserve(n);
  if (region.shape == RegionShape::kCircle) {
    std::uniform_real_distribution<double> radius(0.0, region.radius);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (int i = 0; i < n; ++i) {
      const double r = radius(rng);
      const double a = angle(rng);
      points.push_back({region.origin.x + r * std::cos(a), region.origin.y + r * std::sin(a)});
    }
  } else {
    std::uniform_real_distribution<double> xs(region.origin.x, region.origin.x + region.width);
    std::uniform_real_distribution<double> ys(region.origin.y, region.origin.y + region.height);
    for (int i = 0; i < n; ++i) {
      const double x = xs(rng);
      const double y = ys(rng);
      points.push_back({x, y});
    }
  }
  return points;
}

GeoPoint compute_depot(std::span<const GeoPoint> points) {
  if (points.empty()) throw std::invalid_argument("cannot place a depot for zero points");
  GeoPoint sum{};
  for (const GeoPoint& p : points) {
    sum.x += p.x;
    sum.y += p.y;
  }
  const auto n = static_cast<double>(points.size());
  return {sum.x / n, sum.y / n};
}

SpanningTree minimum_spanning_tree(std::span<const GeoPoint> points) {
  return prim(LengthMatrix(points));
}

SpanningTree build_dmst(std::span<const GeoPoint> points, int degree_bound) {
  if (degree_bound < 2) throw std::invalid_argument("degree bound must be at least 2");
  if (points.size() < 2) throw std::invalid_argument("d-MST needs at least two points");

  LengthMatrix len(points);
  SpanningTree mst = prim(len);
  for (int round = 0; !degrees_within(mst, degree_bound); ++round) {
    if (round == kMaxPenaltyRounds) return greedy_degree_bounded(LengthMatrix(points), degree_bound);

    const auto deg = mst.degrees();
    std::vector<int> violating;
    for (int i = 0; i < mst.size; ++i) {
      if (deg[i] > degree_bound) violating.push_back(i);
    }
    double l_min = std::numeric_limits<double>::infinity();
    double l_max = 0.0;
    for (const auto& [u, v] : mst.edges) {
      l_min = std::min(l_min, len(u, v));
      l_max = std::max(l_max, len(u, v));
    }
    const double f = static_cast<double>(violating.size());

    bool penalised = false;
    for (int k : violating) {
      for (const auto& [u, v] : mst.edges) {
        if (u != k && v != k) continue;
        const double l = len(u, v);
        if (l > l_min && l_max > l_min) {
          len.set(u, v, l + f * l_max * (l - l_min) / (l_max - l_min));
          penalised = true;
        }
      }
    }

    if (!penalised) {
      // Every incident edge ties at l_min, so the scaled rule is a no-op; push all
      // but one shortest incident edge of each violating node up by f * l_max.
      for (int k : violating) {
        std::vector<std::pair<int, int>> incident;
        for (const auto& e : mst.edges) {
          if (e.first == k || e.second == k) incident.push_back(e);
        }
        std::stable_sort(incident.begin(), incident.end(), [&](const auto& a, const auto& b) {
          return len(a.first, a.second) < len(b.first, b.second);
        });
        for (std::size_t e = 1; e < incident.size(); ++e) {
          const auto [u, v] = incident[e];
          len.set(u, v, len(u, v) + f * std::max(l_max, 1e-12));
        }
      }
    }
    mst = prim(len);
  }
  return mst;
}

Relabeling relabel(const SpanningTree& tree) {
  const int n = tree.size;
  if (n < 1) throw std::invalid_argument("cannot relabel an empty tree");
  std::vector<std::vector<int>> adjacency(n);
  for (const auto& [u, v] : tree.edges) {
    adjacency[u].push_back(v);
    adjacency[v].push_back(u);
  }
  for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());

  int source = 0;
  for (int i = 1; i < n; ++i) {
    if (adjacency[i].size() > adjacency[source].size()) source = i;
  }

  std::vector<NodeId> label(n, kNoNode);
  std::vector<int> original{-1};
  std::vector<NodeId> parent{kNoNode};
  std::vector<int> queue{source};
  label[source] = kSource;
  original.push_back(source);
  parent.push_back(kNoNode);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    for (int v : adjacency[u]) {
      if (label[v] != kNoNode) continue;
      label[v] = static_cast<NodeId>(original.size());
      original.push_back(v);
      parent.push_back(label[u]);
      queue.push_back(v);
    }
  }
  if (static_cast<int>(queue.size()) != n) throw std::invalid_argument("tree is not connected");
  return Relabeling{PowerTree(std::move(parent)), std::move(original)};
}

DepthReduction reduce_depth(const PowerTree& tree, std::span<const GeoPoint> points, int k,
                            Rng& rng) {
  const int n = tree.node_count();
  if (static_cast<int>(points.size()) != n + 1) {
    throw std::invalid_argument("reduce_depth needs one point per node plus the depot");
  }
  std::vector<NodeId> parent = tree.parents();
  auto has_grandparent = [&](NodeId v) {
    return parent[v] != kNoNode && parent[parent[v]] != kNoNode;
  };

  int eligible = 0;
  for (NodeId v = 2; v <= n; ++v) eligible += has_grandparent(v) ? 1 : 0;
  if (k < 0 || k > eligible) {
    throw std::invalid_argument("cannot re-parent " + std::to_string(k) + " nodes; only " +
                                std::to_string(eligible) + " have a grandparent");
  }

  NodeSet modified;
  int applied = 0;
  for (int m = 0; m < k; ++m) {
    for (int attempt = 0; attempt < kReparentAttempts; ++attempt) {
      std::vector<NodeId> candidates;
      for (NodeId v = 2; v <= n; ++v) {
        if (!modified.contains(v) && has_grandparent(v)) candidates.push_back(v);
      }
      if (candidates.empty()) break;
      std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
      const NodeId v = candidates[pick(rng)];
      const NodeId g = parent[parent[v]];

      bool crosses = false;
      for (NodeId u = 2; u <= n && !crosses; ++u) {
        if (u == v) continue;
        crosses = segments_cross(points[g], points[v], points[parent[u]], points[u]);
      }
      if (crosses) continue;
      parent[v] = g;
      modified.insert(v);
      ++applied;
      break;
    }
  }
  return DepthReduction{PowerTree(std::move(parent)), applied};
}

Instance generate_instance(const GeneratorConfig& config) {
  if (config.nodes < 1 || config.nodes > kMaxNodes) {
    throw std::invalid_argument("node count must be in [1, " + std::to_string(kMaxNodes) + "]");
  }
  Rng rng(config.seed);
  const std::vector<GeoPoint> raw = generate_points(config.region, config.nodes, rng);
  const GeoPoint depot = compute_depot(raw);
  const SpanningTree spanning =
      config.nodes >= 2 ? build_dmst(raw, config.degree_bound) : SpanningTree{1, {}};
  Relabeling relabeled = relabel(spanning);

  std::vector<GeoPoint> points{depot};
  for (int label = 1; label <= config.nodes; ++label) {
    points.push_back(raw[relabeled.original_index[label]]);
  }
  DepthReduction reduced = reduce_depth(relabeled.tree, points, config.reduce, rng);

  GenerationInfo info{config.region, config.seed, config.degree_bound, config.reduce,
                      reduced.applied};
  return Instance(std::move(points), std::move(reduced.tree), config.repair_time,
                  config.fault_prob, info);
}

}  // namespace trnrp
