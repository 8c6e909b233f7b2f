#include "camel/model.hpp"

#include <string>

namespace camel {

int ProjectionModel::dim() const {
  return transforms.empty() ? 0 : static_cast<int>(transforms.front().rows());
}

int ProjectionModel::out_dim() const {
  return transforms.empty() ? 0 : static_cast<int>(transforms.front().cols());
}

Eigen::MatrixXd ProjectionModel::stacked() const {
  validate();
  const int m = dim();
  Eigen::MatrixXd u(static_cast<Eigen::Index>(num_views()) * m, out_dim());
  for (int p = 0; p < num_views(); ++p) u.middleRows(p * m, m) = transforms[static_cast<std::size_t>(p)];
  return u;
}

ProjectionModel ProjectionModel::identity(int num_views, int dim) {
  if (num_views < 1 || dim < 1)
    throw DataError("ProjectionModel::identity: need at least one view and one dimension");
  ProjectionModel m;
  m.transforms.assign(static_cast<std::size_t>(num_views), Eigen::MatrixXd::Identity(dim, dim));
  m.config.out_dim = dim;
  m.converged = true;
  return m;
}

void ProjectionModel::validate() const {
  if (transforms.size() < 2) throw DataError("ProjectionModel: need at least two views");
  const Eigen::Index m = transforms.front().rows();
  const Eigen::Index t = transforms.front().cols();
  if (m < 1 || t < 1) throw DataError("ProjectionModel: empty transform");
  for (const auto& u : transforms)
    if (u.rows() != m || u.cols() != t)
      throw DataError("ProjectionModel: transforms of view " +
                      std::to_string(&u - transforms.data() + 1) + " have inconsistent shape");
}

}  // namespace camel
