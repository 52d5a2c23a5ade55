#pragma once

#include <cstdint>
#include <vector>

#include "refaudit/matrix.hpp"

namespace refaudit {

struct KMeansOptions {
  int k = 2;
  std::uint64_t seed = 0;
  int max_iter = 300;
  int n_restarts = 50;
  // Restarts are spread over this many threads; results do not depend on it.
  unsigned workers = 1;
};

struct KMeansResult {
  std::vector<int> assignments;  // cluster per row
  Matrix centroids;              // k x d
  double objective = 0.0;        // sum of squared distances to assigned centroid
  int n_iterations = 0;
  int best_restart = 0;
  std::uint64_t seed = 0;
  // Objective after each Lloyd iteration and transfer pass of the winning restart.
  std::vector<double> objective_trace;
};

// Lloyd iterations from k-means++ seeding, then single-point transfer passes
// until no move lowers the objective; best of n_restarts by objective
// (ties go to the lowest restart index). An empty cluster is re-seeded at the
// point farthest from its current centroid. Throws PreconditionError when the
// data has fewer than k distinct rows.
KMeansResult kmeans(const Matrix& data, const KMeansOptions& options);

// Sum of squared distances of each row to its assigned centroid.
double clustering_objective(const Matrix& data, const std::vector<int>& assignments, const Matrix& centroids);

}  // namespace refaudit
