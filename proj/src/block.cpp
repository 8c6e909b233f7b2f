#include "camel/block.hpp"

#include <string>

#include "camel/indicator.hpp"

namespace camel {

Eigen::MatrixXd BlockData::project(const Eigen::MatrixXd& stacked) const {
  if (stacked.rows() != static_cast<long>(num_views) * dim)
    throw std::invalid_argument("BlockData::project: stacked transform has wrong row count");
  Eigen::MatrixXd y(stacked.cols(), total);
  for (int p = 0; p < num_views; ++p) {
    const auto block = stacked.middleRows(p * dim, dim);  // U^{p+1}
    y.middleCols(view_offsets[static_cast<std::size_t>(p)], view_counts[static_cast<std::size_t>(p)]) =
        block.transpose() *
        padded.block(p * dim, view_offsets[static_cast<std::size_t>(p)], dim,
                     view_counts[static_cast<std::size_t>(p)]);
  }
  return y;
}

Eigen::MatrixXd BlockData::padded_times(const IndicatorMatrix& h) const {
  if (h.rows() != total)
    throw std::invalid_argument("BlockData::padded_times: indicator row count mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(padded.rows(), h.cols());
  for (int p = 0; p < num_views; ++p) {
    const int off = view_offsets[static_cast<std::size_t>(p)];
    const int cnt = view_counts[static_cast<std::size_t>(p)];
    for (int j = 0; j < cnt; ++j)
      out.col(h.cluster_of(off + j)).segment(p * dim, dim) += padded.col(off + j).segment(p * dim, dim);
  }
  for (int k = 0; k < h.cols(); ++k)
    if (h.cluster_size(k) > 0) out.col(k) /= std::sqrt(static_cast<double>(h.cluster_size(k)));
  return out;
}

BlockData build_block_data(const FeatureSet& fs, double alpha) {
  BlockData bd;
  bd.num_views = fs.num_views();
  bd.dim = fs.dim();
  bd.total = fs.size();

  const int vm = bd.num_views * bd.dim;
  bd.padded = Eigen::MatrixXd::Zero(vm, bd.total);
  bd.block_cov = Eigen::MatrixXd::Zero(vm, vm);
  bd.scatter.reserve(static_cast<std::size_t>(bd.num_views));
  bd.view_cov.reserve(static_cast<std::size_t>(bd.num_views));

  for (int p = 1; p <= bd.num_views; ++p) {
    const int off = fs.view_offset(p);
    const int cnt = fs.view_count(p);
    bd.view_counts.push_back(cnt);
    bd.view_offsets.push_back(off);

    const auto x_p = fs.view_features(p);
    bd.padded.block((p - 1) * bd.dim, off, bd.dim, cnt) = x_p;

    Eigen::MatrixXd scatter = Eigen::MatrixXd::Zero(bd.dim, bd.dim);
    scatter.selfadjointView<Eigen::Lower>().rankUpdate(x_p);
    scatter.triangularView<Eigen::StrictlyUpper>() = scatter.transpose();
    bd.scatter.push_back(scatter);

    // 1% of the mean per-feature variance of this view
    double ridge = alpha;
    if (alpha < 0.0) ridge = 0.01 * scatter.trace() / (static_cast<double>(cnt) * bd.dim);
    bd.ridge.push_back(ridge);

    Eigen::MatrixXd cov = scatter / static_cast<double>(cnt);
    cov.diagonal().array() += ridge;
    if (ridge == 0.0) {
      Eigen::LLT<Eigen::MatrixXd> llt(cov);
      if (llt.info() != Eigen::Success)
        throw NumericalError("build_block_data: covariance of view " + std::to_string(p) +
                             " is singular; use a positive ridge");
    }
    bd.block_cov.block((p - 1) * bd.dim, (p - 1) * bd.dim, bd.dim, bd.dim) = cov;
    bd.view_cov.push_back(std::move(cov));
  }
  return bd;
}

Eigen::MatrixXd build_consistency_matrix(int num_views, int dim) {
  if (num_views < 2) throw std::invalid_argument("build_consistency_matrix: need at least 2 views");
  if (dim < 1) throw std::invalid_argument("build_consistency_matrix: dimension must be positive");
  const int vm = num_views * dim;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(vm, vm);
  for (int p = 0; p < num_views; ++p)
    for (int q = 0; q < num_views; ++q) {
      const double value = p == q ? static_cast<double>(num_views - 1) : -1.0;
      d.block(p * dim, q * dim, dim, dim).diagonal().setConstant(value);
    }
  return d;
}

}  // namespace camel
