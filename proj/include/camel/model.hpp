#ifndef CAMEL_MODEL_HPP
#define CAMEL_MODEL_HPP

#include <Eigen/Dense>
#include <vector>

#include "camel/types.hpp"

namespace camel {

// The learned artifact: one M x T transform per view plus the training
// metadata needed to reproduce and audit the run. For the symmetric variant
// all transforms are identical; for the Euclidean baseline they are identity.
struct ProjectionModel {
  std::vector<Eigen::MatrixXd> transforms;  // V entries, each M x T
  CamelConfig config;                       // configuration the model was trained with
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_history;

  int num_views() const { return static_cast<int>(transforms.size()); }
  int dim() const;      // M
  int out_dim() const;  // T

  // [U^1^T, ..., U^V^T]^T, (V*M) x T.
  Eigen::MatrixXd stacked() const;

  // Baseline model whose transforms are all I_M (plain Euclidean matching).
  static ProjectionModel identity(int num_views, int dim);

  // Shape consistency; throws DataError on violation.
  void validate() const;
};

}  // namespace camel

#endif  // CAMEL_MODEL_HPP
