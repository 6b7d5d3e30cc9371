#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "docval/errors.hpp"

namespace docval {

struct Document {
  std::string id;
  std::string title;
  std::string body;
};

struct EmbeddingVector {
  std::string id;
  std::vector<double> values;
};

struct Query {
  std::string id;
  std::string text;
  double weight = 1.0;
};

// A coalition over the members of one game, stored as a bitmask. Member slot i
// is bit i; games are capped at 64 members.
struct Coalition {
  std::uint64_t mask = 0;
  int n = 0;

  static Coalition empty(int n);
  static Coalition full(int n);
  static Coalition from_indices(const std::vector<int>& indices, int n);

  bool contains(int i) const;
  Coalition with(int i) const;
  Coalition without(int i) const;
  int cardinality() const { return std::popcount(mask); }
  bool is_empty() const { return mask == 0; }

  // Member indices in ascending order.
  std::vector<int> indices() const;

  // Canonical table key: comma-joined ascending zero-based indices, e.g. "0,2,5".
  std::string key() const;

  bool operator==(const Coalition& o) const { return mask == o.mask && n == o.n; }
};

// All 2^n coalitions in ascending mask order (the empty set first).
std::vector<Coalition> enumerate_all(int n);

enum class Method {
  exact,
  cluster,
  cluster_mc,
  mc,
  tmc,
  kernelshap,
  equal,
  relevance,
};

const char* method_name(Method m);
Method method_from_name(const std::string& name);

// One attribution result: a value per game member plus the cost and parameter
// record needed to compare methods fairly.
struct Attribution {
  Method method = Method::exact;
  std::vector<std::string> doc_ids;  // game member order
  std::vector<double> values;
  std::int64_t unique_subsets = 0;
  std::map<std::string, std::string> params;

  double sum() const;
  // Value for a document id, or 0 when the document is not a member.
  double value_or_zero(const std::string& doc_id) const;
  bool has_member(const std::string& doc_id) const;
};

class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double at(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    d_[static_cast<std::size_t>(i) * n_ + j] = v;
    d_[static_cast<std::size_t>(j) * n_ + i] = v;
  }

 private:
  int n_ = 0;
  std::vector<double> d_;
};

// A partition of member indices into clusters. Clusters list members in
// ascending order and are themselves ordered by smallest member.
using Partition = std::vector<std::vector<int>>;

// Throws NotAPartition unless `clusters` covers 0..n-1 exactly once with no
// empty cluster.
void check_partition(const Partition& clusters, int n);

// Clustering output whose diameter bound was verified: every intra-cluster
// pairwise distance is at most epsilon.
struct ClusterAssignment {
  double epsilon = 0.0;
  Partition clusters;
  double achieved_radius = 0.0;
  int iterations = 0;

  int cluster_count() const { return static_cast<int>(clusters.size()); }
  int cluster_of(int member) const;
};

}  // namespace docval
