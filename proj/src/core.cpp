#include "docval/core.hpp"

#include <algorithm>

namespace docval {

static void check_size(int n) {
  if (n < 0 || n > 64) raise(Errc::too_many_members, "coalition universe must have 0..64 members, got " + std::to_string(n));
}

Coalition Coalition::empty(int n) {
  check_size(n);
  return Coalition{0, n};
}

Coalition Coalition::full(int n) {
  check_size(n);
  std::uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
  return Coalition{mask, n};
}

Coalition Coalition::from_indices(const std::vector<int>& indices, int n) {
  check_size(n);
  Coalition c{0, n};
  for (int i : indices) {
    if (i < 0 || i >= n) raise(Errc::index_out_of_range, "member index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
    std::uint64_t bit = 1ULL << i;
    if (c.mask & bit) raise(Errc::duplicate_member, "member index " + std::to_string(i) + " listed twice");
    c.mask |= bit;
  }
  return c;
}

bool Coalition::contains(int i) const {
  if (i < 0 || i >= n) raise(Errc::index_out_of_range, "member index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  return (mask >> i) & 1ULL;
}

Coalition Coalition::with(int i) const {
  if (i < 0 || i >= n) raise(Errc::index_out_of_range, "member index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  return Coalition{mask | (1ULL << i), n};
}

Coalition Coalition::without(int i) const {
  if (i < 0 || i >= n) raise(Errc::index_out_of_range, "member index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
  return Coalition{mask & ~(1ULL << i), n};
}

std::vector<int> Coalition::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality()));
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1ULL) out.push_back(i);
  return out;
}

std::string Coalition::key() const {
  std::string k;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    if (!((mask >> i) & 1ULL)) continue;
    if (!first) k += ',';
    k += std::to_string(i);
    first = false;
  }
  return k;
}

std::vector<Coalition> enumerate_all(int n) {
  check_size(n);
  if (n > 25) raise(Errc::game_too_large, "refusing to materialize 2^" + std::to_string(n) + " coalitions");
  std::vector<Coalition> out;
  out.reserve(1ULL << n);
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) out.push_back(Coalition{mask, n});
  return out;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::cluster: return "cluster";
    case Method::cluster_mc: return "cluster-mc";
    case Method::mc: return "mc";
    case Method::tmc: return "tmc";
    case Method::kernelshap: return "kernelshap";
    case Method::equal: return "equal";
    case Method::relevance: return "relevance";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "cluster") return Method::cluster;
  if (name == "cluster-mc") return Method::cluster_mc;
  if (name == "mc") return Method::mc;
  if (name == "tmc") return Method::tmc;
  if (name == "kernelshap") return Method::kernelshap;
  if (name == "equal") return Method::equal;
  if (name == "relevance") return Method::relevance;
  raise(Errc::invalid_argument, "unknown method '" + name + "'");
}

double Attribution::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

double Attribution::value_or_zero(const std::string& doc_id) const {
  for (std::size_t i = 0; i < doc_ids.size(); ++i)
    if (doc_ids[i] == doc_id) return values[i];
  return 0.0;
}

bool Attribution::has_member(const std::string& doc_id) const {
  return std::find(doc_ids.begin(), doc_ids.end(), doc_id) != doc_ids.end();
}

void check_partition(const Partition& clusters, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  int covered = 0;
  for (const auto& cluster : clusters) {
    if (cluster.empty()) raise(Errc::not_a_partition, "empty cluster");
    for (int i : cluster) {
      if (i < 0 || i >= n) raise(Errc::not_a_partition, "member index " + std::to_string(i) + " outside 0.." + std::to_string(n - 1));
      if (seen[static_cast<std::size_t>(i)]) raise(Errc::not_a_partition, "member index " + std::to_string(i) + " assigned twice");
      seen[static_cast<std::size_t>(i)] = 1;
      ++covered;
    }
  }
  if (covered != n) raise(Errc::not_a_partition, "clusters cover " + std::to_string(covered) + " of " + std::to_string(n) + " members");
}

int ClusterAssignment::cluster_of(int member) const {
  for (std::size_t k = 0; k < clusters.size(); ++k)
    for (int i : clusters[k])
      if (i == member) return static_cast<int>(k);
  raise(Errc::index_out_of_range, "member " + std::to_string(member) + " not in any cluster");
}

}  // namespace docval
