#ifndef CAMEL_SYNTHETIC_HPP
#define CAMEL_SYNTHETIC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "camel/types.hpp"

namespace camel {

// Cross-view generator with known ground truth. Each identity owns a latent
// Gaussian vector z embedded into feature space by a fixed orthonormal map;
// view p observes x = A^p (E z) + b^p + noise, where A^p = I + bias * R^p
// distorts the shared space in a view-specific but seed-stable way.
struct SyntheticSpec {
  int views = 2;
  int ids = 100;
  int per_view_per_id = 2;  // images of each identity in each view
  int dim = 64;             // M
  int latent_dim = 16;
  double bias_strength = 0.5;
  double noise_sigma = 0.05;
  std::uint64_t seed = 0;

  void validate() const;
};

// The generating quantities, for oracle checks in tests.
struct SyntheticTruth {
  Eigen::MatrixXd embed;                   // dim x latent_dim, orthonormal columns
  std::vector<Eigen::MatrixXd> view_map;   // A^p
  std::vector<Eigen::VectorXd> view_bias;  // b^p
  Eigen::MatrixXd latents;                 // latent_dim x ids
};

FeatureSet generate_synthetic(const SyntheticSpec& spec, SyntheticTruth* truth = nullptr);

}  // namespace camel

#endif  // CAMEL_SYNTHETIC_HPP
