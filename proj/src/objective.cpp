#include "camel/objective.hpp"

#include <stdexcept>
#include <string>

namespace camel {

ObjectiveBreakdown objective_sum_form(const std::vector<Eigen::MatrixXd>& transforms,
                                      const FeatureSet& fs,
                                      const std::vector<int>& assignment,
                                      int num_clusters, double lambda) {
  const int num_views = fs.num_views();
  if (static_cast<int>(transforms.size()) != num_views)
    throw std::invalid_argument("objective_sum_form: expected one transform per view");
  if (static_cast<int>(assignment.size()) != fs.size())
    throw std::invalid_argument("objective_sum_form: assignment size mismatch");
  const int out_dim = static_cast<int>(transforms.front().cols());
  for (const auto& u : transforms)
    if (u.rows() != fs.dim() || u.cols() != out_dim)
      throw std::invalid_argument("objective_sum_form: transform shape mismatch");

  const int n = fs.size();
  Eigen::MatrixXd projected(out_dim, n);
  for (int i = 0; i < n; ++i)
    projected.col(i) = transforms[static_cast<std::size_t>(fs.view_of(i) - 1)].transpose() * fs.feature(i);

  // centroids = means of projected cluster members
  Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(out_dim, num_clusters);
  std::vector<int> sizes(static_cast<std::size_t>(num_clusters), 0);
  for (int i = 0; i < n; ++i) {
    const int k = assignment[static_cast<std::size_t>(i)];
    if (k < 0 || k >= num_clusters)
      throw std::invalid_argument("objective_sum_form: cluster id out of range");
    centroids.col(k) += projected.col(i);
    ++sizes[static_cast<std::size_t>(k)];
  }
  ObjectiveBreakdown out;
  for (int k = 0; k < num_clusters; ++k) {
    if (sizes[static_cast<std::size_t>(k)] > 0)
      centroids.col(k) /= static_cast<double>(sizes[static_cast<std::size_t>(k)]);
    else
      ++out.empty_clusters;
  }

  for (int i = 0; i < n; ++i)
    out.intra += (projected.col(i) - centroids.col(assignment[static_cast<std::size_t>(i)])).squaredNorm();
  for (int p = 0; p < num_views; ++p)
    for (int q = p + 1; q < num_views; ++q)
      out.consistency +=
          (transforms[static_cast<std::size_t>(p)] - transforms[static_cast<std::size_t>(q)]).squaredNorm();

  out.total = out.intra / static_cast<double>(n) + lambda * out.consistency;
  return out;
}

double objective_trace_form(const Eigen::MatrixXd& stacked, const Eigen::MatrixXd& padded,
                            const IndicatorMatrix& h, const Eigen::MatrixXd& consistency,
                            double lambda) {
  if (stacked.rows() != padded.rows())
    throw std::invalid_argument("objective_trace_form: stacked/padded row mismatch");
  if (h.rows() != padded.cols())
    throw std::invalid_argument("objective_trace_form: indicator row count mismatch");
  const Eigen::MatrixXd projected = stacked.transpose() * padded;
  return objective_from_projection(projected, h, stacked, consistency, lambda);
}

double objective_from_projection(const Eigen::MatrixXd& projected, const IndicatorMatrix& h,
                                 const Eigen::MatrixXd& stacked,
                                 const Eigen::MatrixXd& consistency, double lambda) {
  if (consistency.rows() != stacked.rows() || consistency.cols() != stacked.rows())
    throw std::invalid_argument("objective_from_projection: consistency matrix shape mismatch");
  const double n = static_cast<double>(projected.cols());
  const double intra = projected.squaredNorm() - (projected * h).squaredNorm();
  const double coupling = (stacked.transpose() * consistency * stacked).trace();
  return intra / n + lambda * coupling;
}

ObjectiveBreakdown objective_centered(const Eigen::MatrixXd& projected,
                                      const std::vector<int>& assignment, int num_clusters,
                                      const Eigen::MatrixXd& stacked, int num_views,
                                      double lambda) {
  const Eigen::Index n = projected.cols();
  if (static_cast<Eigen::Index>(assignment.size()) != n)
    throw std::invalid_argument("objective_centered: assignment size mismatch");
  if (stacked.rows() % num_views != 0)
    throw std::invalid_argument("objective_centered: stacked rows not divisible by view count");

  Eigen::MatrixXd centroids = Eigen::MatrixXd::Zero(projected.rows(), num_clusters);
  std::vector<int> sizes(static_cast<std::size_t>(num_clusters), 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int k = assignment[static_cast<std::size_t>(i)];
    if (k < 0 || k >= num_clusters)
      throw std::invalid_argument("objective_centered: cluster id out of range");
    centroids.col(k) += projected.col(i);
    ++sizes[static_cast<std::size_t>(k)];
  }
  ObjectiveBreakdown out;
  for (int k = 0; k < num_clusters; ++k) {
    if (sizes[static_cast<std::size_t>(k)] > 0)
      centroids.col(k) /= static_cast<double>(sizes[static_cast<std::size_t>(k)]);
    else
      ++out.empty_clusters;
  }
  for (Eigen::Index i = 0; i < n; ++i)
    out.intra += (projected.col(i) - centroids.col(assignment[static_cast<std::size_t>(i)])).squaredNorm();

  const Eigen::Index blk = stacked.rows() / num_views;
  for (int p = 0; p < num_views; ++p)
    for (int q = p + 1; q < num_views; ++q)
      out.consistency += (stacked.middleRows(p * blk, blk) - stacked.middleRows(q * blk, blk)).squaredNorm();

  out.total = out.intra / static_cast<double>(n) + lambda * out.consistency;
  return out;
}

}  // namespace camel
