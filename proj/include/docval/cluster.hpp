#pragma once

#include <vector>

#include "docval/core.hpp"

namespace docval {

struct ClusteringConfig {
  double epsilon = 0.05;
  int min_pts = 1;
  double shrink_factor = 0.95;
  int max_iterations = 200;
};

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm(const std::vector<double>& a);

// Cosine similarity in [-1, 1]. Throws DimensionMismatch or ZeroNorm.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Cosine distance 1 - similarity, in [0, 2]. Values above 1 are legitimate
// (opposed embeddings) and pass through untouched.
double cosine_distance(const std::vector<double>& a, const std::vector<double>& b);

// Pairwise cosine distances; symmetric with a zero diagonal.
DistanceMatrix distance_matrix(const std::vector<EmbeddingVector>& embeddings);

// Density clustering at a fixed radius. With min_pts = 1 every point is core
// and clusters are the connected components of the distance-at-most-r graph;
// with larger min_pts, non-core points that reach no core point become
// singletons so the result is always a partition. No diameter guarantee.
Partition standard_dbscan(const DistanceMatrix& distances, double radius, int min_pts = 1);

// Radius-shrinking clustering with a certified diameter bound: starts from
// radius epsilon, verifies every intra-cluster pairwise distance is at most
// epsilon, and multiplies the radius by shrink_factor until the check passes.
// Throws IterationLimitExceeded when max_iterations shrink rounds are not
// enough. The returned assignment records the final radius and the number of
// clustering passes run.
ClusterAssignment adaptive_dbscan(const DistanceMatrix& distances, const ClusteringConfig& config);

// Largest intra-cluster pairwise distance, 0 for all-singleton partitions.
double max_intra_cluster_distance(const DistanceMatrix& distances, const Partition& clusters);

}  // namespace docval
