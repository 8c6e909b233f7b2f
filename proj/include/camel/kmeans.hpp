#ifndef CAMEL_KMEANS_HPP
#define CAMEL_KMEANS_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace camel {

struct KMeansResult {
  std::vector<int> assignment;          // 0-based cluster per point
  Eigen::MatrixXd centroids;            // d x K, one column per cluster
  double inertia = 0.0;                 // sum of squared distances to assigned centroids
  int iterations = 0;                   // Lloyd rounds executed
  std::vector<double> inertia_history;  // inertia after each round (non-increasing)
};

// Nearest-centroid assignment for column-sample points (d x N) against
// centroids (d x K). Exact ties go to the lowest cluster index.
std::vector<int> assign_to_centroids(const Eigen::MatrixXd& points,
                                     const Eigen::MatrixXd& centroids);

// Replaces each nonempty cluster's column of `centroids` with the mean of its
// assigned points; columns of empty clusters are left untouched.
void update_centroids(const Eigen::MatrixXd& points, const std::vector<int>& assignment,
                      Eigen::MatrixXd* centroids);

// Lloyd iterations from the given initial centroids. A cluster that loses all
// members keeps its previous centroid and simply stays where it is. Stops when
// the assignment is stable, the inertia decrement drops to tol, or after
// max_iter rounds; the returned assignment is always nearest-centroid with
// respect to the returned centroids.
KMeansResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centroids,
                   int max_iter = 100, double tol = 1e-10);

// Full k-means with k-means++ seeding driven by `seed`. Deterministic for
// fixed (points, num_clusters, seed). Fails if num_clusters exceeds the
// number of points or the number of distinct points.
KMeansResult kmeans(const Eigen::MatrixXd& points, int num_clusters, std::uint64_t seed,
                    int max_iter = 100, double tol = 1e-10);

}  // namespace camel

#endif  // CAMEL_KMEANS_HPP
