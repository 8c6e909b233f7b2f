#include "camel/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "camel/rng.hpp"
#include "camel/types.hpp"

namespace camel {

namespace {

// Squared-norm trick with chunked GEMM so the K x N expansion never
// materializes at once. minCoeff scans in order, so the winner on exact ties
// is always the lowest cluster index.
void assign_chunked(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                    std::vector<int>* assignment) {
  const Eigen::Index n = points.cols();
  const Eigen::Index k = centroids.cols();
  const Eigen::VectorXd csq = centroids.colwise().squaredNorm();
  assignment->resize(static_cast<std::size_t>(n));

  const Eigen::Index chunk = std::max<Eigen::Index>(1, (1 << 22) / std::max<Eigen::Index>(1, k));
  Eigen::MatrixXd dist;
  for (Eigen::Index start = 0; start < n; start += chunk) {
    const Eigen::Index len = std::min(chunk, n - start);
    // ||x - c||^2 = ||c||^2 - 2 c'x + ||x||^2; the ||x||^2 term is constant
    // per column and cannot change the argmin, so it is dropped.
    dist.noalias() = -2.0 * (centroids.transpose() * points.middleCols(start, len));
    dist.colwise() += csq;
    for (Eigen::Index j = 0; j < len; ++j) {
      Eigen::Index best = 0;
      dist.col(j).minCoeff(&best);
      (*assignment)[static_cast<std::size_t>(start + j)] = static_cast<int>(best);
    }
  }
}

// Exact inertia by direct subtraction (the GEMM shortcut above is fine for
// the argmin but loses digits for the value itself).
double exact_inertia(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                     const std::vector<int>& assignment) {
  double total = 0.0;
  for (Eigen::Index j = 0; j < points.cols(); ++j)
    total += (points.col(j) - centroids.col(assignment[static_cast<std::size_t>(j)])).squaredNorm();
  return total;
}

}  // namespace

void update_centroids(const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                      Eigen::MatrixXd* centroids) {
  if (points.rows() != centroids->rows())
    throw std::invalid_argument("update_centroids: dimension mismatch");
  if (static_cast<Eigen::Index>(assignment.size()) != points.cols())
    throw std::invalid_argument("update_centroids: assignment size mismatch");
  const Eigen::Index k = centroids->cols();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(points.rows(), k);
  std::vector<long> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const int c = assignment[static_cast<std::size_t>(j)];
    if (c < 0 || c >= k) throw std::invalid_argument("update_centroids: cluster id out of range");
    sums.col(c) += points.col(j);
    ++counts[static_cast<std::size_t>(c)];
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0)
      centroids->col(c) = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    // else: empty cluster, centroid stays put
  }
}

std::vector<int> assign_to_centroids(const Eigen::MatrixXd& points,
                                     const Eigen::MatrixXd& centroids) {
  if (points.rows() != centroids.rows())
    throw std::invalid_argument("assign_to_centroids: dimension mismatch");
  if (points.cols() == 0 || centroids.cols() == 0)
    throw std::invalid_argument("assign_to_centroids: empty input");
  std::vector<int> assignment;
  assign_chunked(points, centroids, &assignment);
  return assignment;
}

KMeansResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids,
                   int max_iter, double tol) {
  if (points.rows() != centroids.rows())
    throw std::invalid_argument("lloyd: dimension mismatch");
  if (centroids.cols() < 1) throw std::invalid_argument("lloyd: no centroids");
  if (max_iter < 0) throw std::invalid_argument("lloyd: negative max_iter");

  KMeansResult res;
  res.centroids = std::move(centroids);
  assign_chunked(points, res.centroids, &res.assignment);
  res.inertia = exact_inertia(points, res.centroids, res.assignment);
  res.inertia_history.push_back(res.inertia);

  std::vector<int> next;
  for (int it = 0; it < max_iter; ++it) {
    update_centroids(points, res.assignment, &res.centroids);
    assign_chunked(points, res.centroids, &next);
    const double inertia = exact_inertia(points, res.centroids, next);
    const bool stable = (next == res.assignment);
    const double drop = res.inertia - inertia;
    res.assignment.swap(next);
    res.inertia = inertia;
    res.inertia_history.push_back(inertia);
    ++res.iterations;
    if (stable || drop <= tol) break;
  }
  return res;
}

KMeansResult kmeans(const Eigen::MatrixXd& points, int num_clusters, std::uint64_t seed,
                    int max_iter, double tol) {
  const Eigen::Index n = points.cols();
  if (num_clusters < 1) throw std::invalid_argument("kmeans: num_clusters must be positive");
  if (n < num_clusters)
    throw DataError("kmeans: fewer points than clusters (" + std::to_string(n) + " < " +
                    std::to_string(num_clusters) + ")");

  // k-means++ seeding
  Rng rng(seed);
  Eigen::MatrixXd centroids(points.rows(), num_clusters);
  centroids.col(0) = points.col(static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n))));
  Eigen::VectorXd d2 =
      (points.colwise() - centroids.col(0)).colwise().squaredNorm().transpose();
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (int c = 1; c < num_clusters; ++c) {
    if (d2.maxCoeff() <= 0.0)
      throw DataError("kmeans: fewer distinct points than clusters");
    for (Eigen::Index j = 0; j < n; ++j)
      weights[static_cast<std::size_t>(j)] = std::max(0.0, d2[j]);
    const std::size_t pick = rng.weighted(weights);
    centroids.col(c) = points.col(static_cast<Eigen::Index>(pick));
    d2 = d2.cwiseMin(
        (points.colwise() - centroids.col(c)).colwise().squaredNorm().transpose());
  }

  return lloyd(points, std::move(centroids), max_iter, tol);
}

}  // namespace camel
