#include "refaudit/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>
#include <thread>

#include "refaudit/error.hpp"
#include "refaudit/seed.hpp"

namespace refaudit {

namespace {

std::size_t distinct_rows(const Matrix& data) {
  std::set<std::vector<double>> seen;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    auto r = data.row(i);
    seen.emplace(r.begin(), r.end());
  }
  return seen.size();
}

Matrix plus_plus_seeding(const Matrix& data, int k, std::mt19937_64& rng) {
  const std::size_t n = data.rows();
  Matrix centers(static_cast<std::size_t>(k), data.cols());
  auto first = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n));
  std::copy_n(data.row(first).begin(), data.cols(), centers.row(0).begin());

  std::vector<double> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = squared_distance(data.row(i), centers.row(0));

  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : best) total += v;
    std::size_t next = n - 1;
    if (total <= 0.0) {
      next = static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(n));
    } else {
      const double target = unit_uniform(rng) * total;
      double cum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cum += best[i];
        if (target < cum) {
          next = i;
          break;
        }
      }
    }
    std::copy_n(data.row(next).begin(), data.cols(), centers.row(static_cast<std::size_t>(c)).begin());
    for (std::size_t i = 0; i < n; ++i) {
      best[i] = std::min(best[i], squared_distance(data.row(i), centers.row(static_cast<std::size_t>(c))));
    }
  }
  return centers;
}

// Returns true when any assignment changed.
bool assign_rows(const Matrix& data, const Matrix& centers, std::vector<int>& labels) {
  bool changed = false;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    int best_c = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < centers.rows(); ++c) {
      const double d = squared_distance(data.row(i), centers.row(c));
      if (d < best_d) {
        best_d = d;
        best_c = static_cast<int>(c);
      }
    }
    if (labels[i] != best_c) {
      labels[i] = best_c;
      changed = true;
    }
  }
  return changed;
}

void reseed_empty(const Matrix& data, const Matrix& centers, std::vector<int>& labels, int k) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] != 0) continue;
    std::size_t far = 0;
    double far_d = -1.0;
    for (std::size_t i = 0; i < data.rows(); ++i) {
      if (sizes[static_cast<std::size_t>(labels[i])] <= 1) continue;
      const double d = squared_distance(data.row(i), centers.row(static_cast<std::size_t>(labels[i])));
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    --sizes[static_cast<std::size_t>(labels[far])];
    labels[far] = c;
    ++sizes[static_cast<std::size_t>(c)];
  }
}

void update_centers(const Matrix& data, const std::vector<int>& labels, Matrix& centers) {
  const std::size_t k = centers.rows();
  std::vector<std::size_t> counts(k, 0);
  centers = Matrix(k, data.cols());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    ++counts[c];
    auto row = data.row(i);
    auto center = centers.row(c);
    for (std::size_t j = 0; j < row.size(); ++j) center[j] += row[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (counts[c] == 0) continue;
    for (auto& v : centers.row(c)) v /= static_cast<double>(counts[c]);
  }
}

// Hartigan single-point transfers: moving x from cluster a to b changes the
// objective by n_b/(n_b+1) |x-c_b|^2 - n_a/(n_a-1) |x-c_a|^2. Lloyd's fixed
// points can still admit such a move; this pass removes them. Returns true
// when any point moved.
bool transfer_pass(const Matrix& data, std::vector<int>& labels, Matrix& centers) {
  const std::size_t k = centers.rows();
  std::vector<std::size_t> sizes(k, 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  bool moved = false;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto a = static_cast<std::size_t>(labels[i]);
    if (sizes[a] <= 1) continue;
    const auto x = data.row(i);
    const double na = static_cast<double>(sizes[a]);
    const double removal = na / (na - 1.0) * squared_distance(x, centers.row(a));
    std::size_t best = a;
    double best_cost = removal;
    for (std::size_t b = 0; b < k; ++b) {
      if (b == a) continue;
      const double nb = static_cast<double>(sizes[b]);
      const double cost = nb / (nb + 1.0) * squared_distance(x, centers.row(b));
      if (cost < best_cost) {
        best_cost = cost;
        best = b;
      }
    }
    // Relative margin keeps rounding noise from cycling points back and forth.
    if (best == a || removal - best_cost <= 1e-12 * removal) continue;
    auto ca = centers.row(a);
    auto cb = centers.row(best);
    const double nb = static_cast<double>(sizes[best]);
    for (std::size_t j = 0; j < x.size(); ++j) {
      ca[j] = (ca[j] * na - x[j]) / (na - 1.0);
      cb[j] = (cb[j] * nb + x[j]) / (nb + 1.0);
    }
    --sizes[a];
    ++sizes[best];
    labels[i] = static_cast<int>(best);
    moved = true;
  }
  return moved;
}

KMeansResult single_run(const Matrix& data, const KMeansOptions& options, int restart) {
  std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(restart)));
  KMeansResult r;
  r.seed = options.seed;
  r.best_restart = restart;
  r.centroids = plus_plus_seeding(data, options.k, rng);
  r.assignments.assign(data.rows(), -1);
  for (int it = 0; it < options.max_iter; ++it) {
    const bool changed = assign_rows(data, r.centroids, r.assignments);
    if (!changed && it > 0) break;
    reseed_empty(data, r.centroids, r.assignments, options.k);
    update_centers(data, r.assignments, r.centroids);
    r.objective_trace.push_back(clustering_objective(data, r.assignments, r.centroids));
    r.n_iterations = it + 1;
  }
  while (transfer_pass(data, r.assignments, r.centroids)) {
    update_centers(data, r.assignments, r.centroids);  // drop drift from the incremental updates
    r.objective_trace.push_back(clustering_objective(data, r.assignments, r.centroids));
    ++r.n_iterations;
    if (r.n_iterations >= 10 * options.max_iter) break;
  }
  r.objective = clustering_objective(data, r.assignments, r.centroids);
  return r;
}

}  // namespace

double clustering_objective(const Matrix& data, const std::vector<int>& assignments, const Matrix& centroids) {
  double total = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    total += squared_distance(data.row(i), centroids.row(static_cast<std::size_t>(assignments[i])));
  }
  return total;
}

KMeansResult kmeans(const Matrix& data, const KMeansOptions& options) {
  if (options.k < 1) throw PreconditionError("kmeans: k must be positive");
  if (options.n_restarts < 1 || options.max_iter < 1) {
    throw PreconditionError("kmeans: restarts and max_iter must be positive");
  }
  if (distinct_rows(data) < static_cast<std::size_t>(options.k)) {
    throw PreconditionError("kmeans: fewer than " + std::to_string(options.k) + " distinct rows");
  }

  std::vector<KMeansResult> runs(static_cast<std::size_t>(options.n_restarts));
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(runs.size())));
  if (workers == 1) {
    for (int r = 0; r < options.n_restarts; ++r) runs[static_cast<std::size_t>(r)] = single_run(data, options, r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < runs.size(); r += workers) runs[r] = single_run(data, options, static_cast<int>(r));
      });
    }
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].objective < runs[best].objective) best = r;
  }
  return std::move(runs[best]);
}

}  // namespace refaudit
