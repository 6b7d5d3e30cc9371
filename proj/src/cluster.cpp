#include "docval/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace docval {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) raise(Errc::dimension_mismatch, "vectors of dimension " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm(const std::vector<double>& a) { return std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0)); }

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double d = dot(a, b);
  double na = norm(a);
  double nb = norm(b);
  if (na == 0.0 || nb == 0.0) raise(Errc::zero_norm, "cosine similarity of a zero vector");
  // Guard rounding so the result stays inside [-1, 1].
  return std::clamp(d / (na * nb), -1.0, 1.0);
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
  return 1.0 - cosine_similarity(a, b);
}

DistanceMatrix distance_matrix(const std::vector<EmbeddingVector>& embeddings) {
  int n = static_cast<int>(embeddings.size());
  DistanceMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m.set(i, j, cosine_distance(embeddings[static_cast<std::size_t>(i)].values,
                                  embeddings[static_cast<std::size_t>(j)].values));
  return m;
}

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
  }
};

}  // namespace

Partition standard_dbscan(const DistanceMatrix& distances, double radius, int min_pts) {
  int n = distances.size();
  if (n == 0) return {};
  if (min_pts < 1) raise(Errc::invalid_argument, "min_pts must be at least 1");

  std::vector<char> core(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    int neighbors = 0;  // the neighborhood includes the point itself
    for (int j = 0; j < n; ++j)
      if (distances.at(i, j) <= radius) ++neighbors;
    core[static_cast<std::size_t>(i)] = neighbors >= min_pts;
  }

  UnionFind uf(n);
  for (int i = 0; i < n; ++i) {
    if (!core[static_cast<std::size_t>(i)]) continue;
    for (int j = i + 1; j < n; ++j)
      if (core[static_cast<std::size_t>(j)] && distances.at(i, j) <= radius) uf.unite(i, j);
  }

  // Border points join the cluster of their smallest core neighbor; points
  // reaching no core point become singletons so the result is a partition.
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    if (core[static_cast<std::size_t>(i)]) label[static_cast<std::size_t>(i)] = uf.find(i);
  for (int j = 0; j < n; ++j) {
    if (core[static_cast<std::size_t>(j)]) continue;
    for (int i = 0; i < n; ++i) {
      if (i == j || !core[static_cast<std::size_t>(i)]) continue;
      if (distances.at(j, i) <= radius) {
        label[static_cast<std::size_t>(j)] = uf.find(i);
        break;
      }
    }
    if (label[static_cast<std::size_t>(j)] < 0) label[static_cast<std::size_t>(j)] = n + j;
  }

  std::vector<std::vector<int>> groups(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) groups[static_cast<std::size_t>(label[static_cast<std::size_t>(i)])].push_back(i);
  Partition clusters;
  for (auto& members : groups)
    if (!members.empty()) clusters.push_back(std::move(members));
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

double max_intra_cluster_distance(const DistanceMatrix& distances, const Partition& clusters) {
  double worst = 0.0;
  for (const auto& cluster : clusters)
    for (std::size_t a = 0; a < cluster.size(); ++a)
      for (std::size_t b = a + 1; b < cluster.size(); ++b)
        worst = std::max(worst, distances.at(cluster[a], cluster[b]));
  return worst;
}

ClusterAssignment adaptive_dbscan(const DistanceMatrix& distances, const ClusteringConfig& config) {
  if (config.epsilon < 0) raise(Errc::invalid_argument, "epsilon must be nonnegative");
  if (config.shrink_factor <= 0 || config.shrink_factor >= 1) raise(Errc::invalid_argument, "shrink factor must lie in (0,1)");

  int n = distances.size();
  double radius = config.epsilon;
  ClusterAssignment out;
  out.epsilon = config.epsilon;

  for (int pass = 1; pass <= config.max_iterations; ++pass) {
    Partition clusters = standard_dbscan(distances, radius, config.min_pts);
    out.iterations = pass;
    if (max_intra_cluster_distance(distances, clusters) <= config.epsilon) {
      check_partition(clusters, n);
      out.clusters = std::move(clusters);
      out.achieved_radius = radius;
      return out;
    }
    radius *= config.shrink_factor;
  }
  raise(Errc::iteration_limit_exceeded,
        "no radius within " + std::to_string(config.max_iterations) + " shrink rounds satisfies the diameter bound");
}

}  // namespace docval
