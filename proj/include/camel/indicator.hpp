#ifndef CAMEL_INDICATOR_HPP
#define CAMEL_INDICATOR_HPP

#include <Eigen/Dense>
#include <vector>

namespace camel {

// Scaled cluster-indicator matrix H (N x K): row i carries a single nonzero
// 1/sqrt(n_k) in the column of sample i's cluster, so nonempty columns are
// orthonormal. Stored as the assignment plus cluster sizes; the dense form is
// materialized only on demand. Empty clusters are legal and show up as
// all-zero columns, which keeps K fixed across solver iterations.
class IndicatorMatrix {
 public:
  // assignment holds 0-based cluster ids, one per sample.
  IndicatorMatrix(std::vector<int> assignment, int num_clusters);

  int rows() const { return static_cast<int>(assignment_.size()); }  // N
  int cols() const { return num_clusters_; }                         // K

  int cluster_of(int i) const { return assignment_[static_cast<std::size_t>(i)]; }
  int cluster_size(int k) const { return sizes_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& assignment() const { return assignment_; }
  const std::vector<int>& cluster_sizes() const { return sizes_; }
  int nonempty_clusters() const { return nonempty_; }

  double entry(int i, int k) const;
  Eigen::MatrixXd dense() const;

  // H^T H: diagonal with 1 for nonempty clusters and 0 for empty ones.
  Eigen::MatrixXd gram() const;

 private:
  std::vector<int> assignment_;
  std::vector<int> sizes_;
  std::vector<double> inv_sqrt_sizes_;
  int num_clusters_ = 0;
  int nonempty_ = 0;

  friend Eigen::MatrixXd operator*(const Eigen::MatrixXd& points, const IndicatorMatrix& h);
};

// points * H for a column-sample matrix (d x N) -> d x K, exploiting the
// one-nonzero-per-row structure. Column k is sum_{i in C_k} points_i / sqrt(n_k).
Eigen::MatrixXd operator*(const Eigen::MatrixXd& points, const IndicatorMatrix& h);

}  // namespace camel

#endif  // CAMEL_INDICATOR_HPP
