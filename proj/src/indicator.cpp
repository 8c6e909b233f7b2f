#include "camel/indicator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace camel {

IndicatorMatrix::IndicatorMatrix(std::vector<int> assignment, int num_clusters)
    : assignment_(std::move(assignment)), num_clusters_(num_clusters) {
  if (num_clusters_ < 1) throw std::invalid_argument("IndicatorMatrix: need at least one cluster");
  if (assignment_.empty()) throw std::invalid_argument("IndicatorMatrix: empty assignment");

  sizes_.assign(static_cast<std::size_t>(num_clusters_), 0);
  for (int a : assignment_) {
    if (a < 0 || a >= num_clusters_)
      throw std::invalid_argument("IndicatorMatrix: cluster id " + std::to_string(a) +
                                  " outside [0, " + std::to_string(num_clusters_) + ")");
    ++sizes_[static_cast<std::size_t>(a)];
  }

  inv_sqrt_sizes_.assign(static_cast<std::size_t>(num_clusters_), 0.0);
  for (int k = 0; k < num_clusters_; ++k) {
    if (sizes_[static_cast<std::size_t>(k)] > 0) {
      inv_sqrt_sizes_[static_cast<std::size_t>(k)] =
          1.0 / std::sqrt(static_cast<double>(sizes_[static_cast<std::size_t>(k)]));
      ++nonempty_;
    }
  }
}

double IndicatorMatrix::entry(int i, int k) const {
  return cluster_of(i) == k ? inv_sqrt_sizes_[static_cast<std::size_t>(k)] : 0.0;
}

Eigen::MatrixXd IndicatorMatrix::dense() const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(rows(), cols());
  for (int i = 0; i < rows(); ++i)
    h(i, cluster_of(i)) = inv_sqrt_sizes_[static_cast<std::size_t>(cluster_of(i))];
  return h;
}

Eigen::MatrixXd IndicatorMatrix::gram() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(cols(), cols());
  for (int k = 0; k < cols(); ++k)
    if (sizes_[static_cast<std::size_t>(k)] > 0) g(k, k) = 1.0;
  return g;
}

Eigen::MatrixXd operator*(const Eigen::MatrixXd& points, const IndicatorMatrix& h) {
  if (points.cols() != h.rows())
    throw std::invalid_argument("IndicatorMatrix: left factor has " +
                                std::to_string(points.cols()) + " columns, expected " +
                                std::to_string(h.rows()));
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(points.rows(), h.cols());
  for (int i = 0; i < h.rows(); ++i) out.col(h.cluster_of(i)) += points.col(i);
  for (int k = 0; k < h.cols(); ++k)
    if (h.cluster_size(k) > 0) out.col(k) *= h.inv_sqrt_sizes_[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace camel
