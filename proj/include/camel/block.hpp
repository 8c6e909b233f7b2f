#ifndef CAMEL_BLOCK_HPP
#define CAMEL_BLOCK_HPP

#include <Eigen/Dense>
#include <vector>

#include "camel/types.hpp"

namespace camel {

// Block-structured view of a FeatureSet: the zero-padded data matrix, the
// per-view covariances and their block-diagonal stack. Column j of `padded`
// holds sample j's feature in its view's block rows and zeros elsewhere.
struct BlockData {
  int num_views = 0;  // V
  int dim = 0;        // M
  int total = 0;      // N

  std::vector<int> view_counts;   // N_p
  std::vector<int> view_offsets;  // first column of each view in `padded`

  Eigen::MatrixXd padded;                // (V*M) x N
  std::vector<Eigen::MatrixXd> scatter;  // X^p X^pT, M x M per view
  std::vector<Eigen::MatrixXd> view_cov; // Sigma^p = scatter/N_p + ridge_p I
  std::vector<double> ridge;             // ridge actually applied per view
  Eigen::MatrixXd block_cov;             // block-diagonal stack of the view_cov

  // Y = stacked^T * padded without touching the zero blocks. stacked is
  // (V*M) x T; the result is T x N.
  Eigen::MatrixXd project(const Eigen::MatrixXd& stacked) const;

  // padded * H computed from the block structure, (V*M) x K.
  Eigen::MatrixXd padded_times(const class IndicatorMatrix& h) const;
};

// Builds the block matrices for a feature set. alpha < 0 selects the
// automatic ridge (1% of the mean per-feature variance of that view);
// alpha >= 0 is applied uniformly. With a zero ridge a rank-deficient
// view covariance is reported as a NumericalError.
BlockData build_block_data(const FeatureSet& fs, double alpha = -1.0);

// The cross-view consistency coupling D ((V*M) x (V*M)): (V-1)I diagonal
// blocks, -I off-diagonal. Satisfies tr(U~^T D U~) = sum_{p<q} |U^p - U^q|_F^2.
Eigen::MatrixXd build_consistency_matrix(int num_views, int dim);

}  // namespace camel

#endif  // CAMEL_BLOCK_HPP
