#include "camel/preprocess.hpp"

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace camel {

FeatureSet pca_reduce(const FeatureSet& fs, int out_dim) {
  if (out_dim < 1 || out_dim > fs.dim())
    throw DataError("pca_reduce: out_dim must be in [1, " + std::to_string(fs.dim()) + "]");

  const Eigen::MatrixXd& x = fs.features();
  const Eigen::VectorXd mean = x.rowwise().mean();
  const Eigen::MatrixXd centered = x.colwise() - mean;

  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(fs.dim(), fs.dim());
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / fs.size());
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw NumericalError("pca_reduce: eigensolver failed");

  // eigenvalues come out ascending; take the top out_dim in descending order
  Eigen::MatrixXd basis(fs.dim(), out_dim);
  for (int c = 0; c < out_dim; ++c) {
    Eigen::VectorXd v = es.eigenvectors().col(fs.dim() - 1 - c);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    basis.col(c) = v;
  }

  const Eigen::MatrixXd projected = basis.transpose() * centered;
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(fs.size()));
  for (int i = 0; i < fs.size(); ++i) {
    Sample s;
    s.view = fs.view_of(i);
    s.identity = fs.labeled() ? fs.identity_of(i) : -1;
    s.feature = projected.col(i);
    samples.push_back(std::move(s));
  }
  return FeatureSet(fs.num_views(), samples);
}

}  // namespace camel
