#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <limits>
#include <vector>

#include "camel/kmeans.hpp"
#include "camel/rng.hpp"
#include "camel/types.hpp"

using namespace camel;

namespace {

Eigen::MatrixXd gaussian_points(Rng* rng, int dim, int n) {
  Eigen::MatrixXd p(dim, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) p(r, c) = rng->gaussian();
  return p;
}

// well-separated mixture: k blobs on a coarse grid with small jitter
Eigen::MatrixXd blob_points(Rng* rng, int dim, int k, int per_blob, double spread,
                            std::vector<int>* truth = nullptr) {
  Eigen::MatrixXd p(dim, k * per_blob);
  int col = 0;
  for (int b = 0; b < k; ++b) {
    Eigen::VectorXd center(dim);
    for (int r = 0; r < dim; ++r) center[r] = 10.0 * rng->gaussian();
    for (int i = 0; i < per_blob; ++i, ++col) {
      for (int r = 0; r < dim; ++r) p(r, col) = center[r] + spread * rng->gaussian();
      if (truth) truth->push_back(b);
    }
  }
  return p;
}

double brute_inertia(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids,
                     const std::vector<int>& assignment) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < points.cols(); ++i)
    total += (points.col(i) - centroids.col(assignment[static_cast<std::size_t>(i)])).squaredNorm();
  return total;
}

std::vector<int> brute_assignment(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centroids) {
  std::vector<int> a(static_cast<std::size_t>(points.cols()));
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Eigen::Index k = 0; k < centroids.cols(); ++k) {
      const double d = (points.col(i) - centroids.col(k)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<int>(k);
      }
    }
    a[static_cast<std::size_t>(i)] = arg;
  }
  return a;
}

}  // namespace

TEST_CASE("two clusters on the line {0, 0.1, 10, 10.1}") {
  Eigen::MatrixXd points(1, 4);
  points << 0.0, 0.1, 10.0, 10.1;
  const KMeansResult km = kmeans(points, 2, 0);
  // optimum pairs the nearby points: inertia = 2 * (0.05^2 + 0.05^2) = 0.01
  CHECK(km.inertia == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(km.assignment[0] == km.assignment[1]);
  CHECK(km.assignment[2] == km.assignment[3]);
  CHECK(km.assignment[0] != km.assignment[2]);
  const double lo = std::min(km.centroids(0, 0), km.centroids(0, 1));
  const double hi = std::max(km.centroids(0, 0), km.centroids(0, 1));
  CHECK(lo == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(hi == doctest::Approx(10.05).epsilon(1e-12));
}

TEST_CASE("K equal to the number of distinct points gives zero inertia") {
  Rng rng(3);
  const Eigen::MatrixXd points = gaussian_points(&rng, 3, 8);
  const KMeansResult km = kmeans(points, 8, 17);
  CHECK(km.inertia == 0.0);
  // every point is its own centroid
  std::vector<bool> seen(8, false);
  for (int a : km.assignment) {
    CHECK_FALSE(seen[static_cast<std::size_t>(a)]);
    seen[static_cast<std::size_t>(a)] = true;
  }
}

TEST_CASE("matches a multi-restart oracle on separated blobs") {
  Rng rng(4);
  std::vector<int> truth;
  const Eigen::MatrixXd points = blob_points(&rng, 4, 5, 30, 0.1, &truth);

  double oracle = std::numeric_limits<double>::infinity();
  for (std::uint64_t restart = 0; restart < 50; ++restart)
    oracle = std::min(oracle, kmeans(points, 5, 1000 + restart).inertia);

  const KMeansResult km = kmeans(points, 5, 0);
  CHECK(km.inertia <= oracle * 1.01 + 1e-12);

  // blobs this separated should be recovered exactly: assignments agree with
  // the truth partition up to relabeling
  std::vector<int> relabel(5, -1);
  bool consistent = true;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    int& slot = relabel[static_cast<std::size_t>(truth[i])];
    if (slot == -1) slot = km.assignment[i];
    consistent = consistent && slot == km.assignment[i];
  }
  CHECK(consistent);
}

TEST_CASE("assignment ties go to the lowest cluster index") {
  Eigen::MatrixXd centroids(1, 3);
  centroids << -1.0, 1.0, -1.0;  // duplicated centroid
  Eigen::MatrixXd points(1, 2);
  points << 0.0, -1.0;  // 0.0 equidistant from -1 and 1; -1 exactly on two centroids
  const std::vector<int> a = assign_to_centroids(points, centroids);
  CHECK(a[0] == 0);
  CHECK(a[1] == 0);
}

TEST_CASE("assignment agrees with the brute-force rule") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 1 + static_cast<int>(rng.index(5));
    const int n = 1 + static_cast<int>(rng.index(40));
    const int k = 1 + static_cast<int>(rng.index(10));
    const Eigen::MatrixXd points = gaussian_points(&rng, d, n);
    const Eigen::MatrixXd centroids = gaussian_points(&rng, d, k);
    CHECK(assign_to_centroids(points, centroids) == brute_assignment(points, centroids));
  }
}

TEST_CASE("reported inertia matches direct recomputation") {
  Rng rng(6);
  const Eigen::MatrixXd points = gaussian_points(&rng, 3, 50);
  const KMeansResult km = kmeans(points, 7, 2);
  CHECK(km.inertia == doctest::Approx(brute_inertia(points, km.centroids, km.assignment))
                          .epsilon(1e-12));
  // returned assignment is nearest-centroid for the returned centroids
  CHECK(km.assignment == assign_to_centroids(points, km.centroids));
}

TEST_CASE("inertia history is non-increasing") {
  Rng rng(7);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd points = gaussian_points(&rng, 4, 120);
    const KMeansResult km = kmeans(points, 6, seed);
    REQUIRE(!km.inertia_history.empty());
    for (std::size_t i = 1; i < km.inertia_history.size(); ++i)
      CHECK(km.inertia_history[i] <= km.inertia_history[i - 1] + 1e-10);
    CHECK(km.inertia == km.inertia_history.back());
  }
}

TEST_CASE("deterministic for a fixed seed") {
  Rng rng(8);
  const Eigen::MatrixXd points = gaussian_points(&rng, 5, 80);
  const KMeansResult a = kmeans(points, 9, 42);
  const KMeansResult b = kmeans(points, 9, 42);
  CHECK(a.assignment == b.assignment);
  CHECK((a.centroids - b.centroids).norm() == 0.0);
  CHECK(a.inertia == b.inertia);
  CHECK(a.iterations == b.iterations);

  const KMeansResult c = kmeans(points, 9, 43);
  CHECK((a.assignment != c.assignment || (a.centroids - c.centroids).norm() != 0.0 ||
         a.inertia != c.inertia));
}

TEST_CASE("more clusters than points is an error") {
  Eigen::MatrixXd points(2, 3);
  points << 0, 1, 2, 0, 1, 2;
  CHECK_THROWS_AS(kmeans(points, 4, 0), DataError);
}

TEST_CASE("more clusters than distinct points is an error") {
  Eigen::MatrixXd points(1, 4);
  points << 1.0, 1.0, 2.0, 2.0;
  CHECK_THROWS_AS(kmeans(points, 3, 0), DataError);
  CHECK_NOTHROW(kmeans(points, 2, 0));
}

TEST_CASE("lloyd keeps the centroid of a cluster that loses all members") {
  // centroid 2 starts far away, captures nothing, and must stay put
  Eigen::MatrixXd points(1, 4);
  points << 0.0, 0.2, 10.0, 10.2;
  Eigen::MatrixXd init(1, 3);
  init << 0.0, 10.0, 500.0;
  const KMeansResult km = lloyd(points, init);
  CHECK(km.centroids(0, 2) == 500.0);
  CHECK(km.centroids(0, 0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(km.centroids(0, 1) == doctest::Approx(10.1).epsilon(1e-12));
  CHECK(km.inertia == doctest::Approx(4 * 0.01).epsilon(1e-12));
}

TEST_CASE("update_centroids replaces nonempty means and leaves empty columns") {
  Eigen::MatrixXd points(2, 3);
  points << 0, 2, 4, 0, 0, 6;
  Eigen::MatrixXd centroids(2, 3);
  centroids << -1, -2, -3, -1, -2, -3;
  update_centroids(points, {0, 0, 2}, &centroids);
  CHECK(centroids(0, 0) == 1.0);
  CHECK(centroids(1, 0) == 0.0);
  CHECK(centroids(0, 1) == -2.0);  // untouched
  CHECK(centroids(1, 1) == -2.0);
  CHECK(centroids(0, 2) == 4.0);
  CHECK(centroids(1, 2) == 6.0);
}

TEST_CASE("lloyd from the optimal centroids converges immediately") {
  Eigen::MatrixXd points(1, 4);
  points << 0.0, 0.1, 10.0, 10.1;
  Eigen::MatrixXd init(1, 2);
  init << 0.05, 10.05;
  const KMeansResult km = lloyd(points, init);
  CHECK(km.inertia == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(km.iterations <= 2);
}
