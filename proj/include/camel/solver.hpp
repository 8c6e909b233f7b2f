#ifndef CAMEL_SOLVER_HPP
#define CAMEL_SOLVER_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "camel/block.hpp"
#include "camel/indicator.hpp"
#include "camel/model.hpp"
#include "camel/types.hpp"

namespace camel {

// Trace of one alternating run. objective_history holds F_obj after every
// eigen step (entry 0 comes from the solve against the initial clustering);
// it is non-increasing within 1e-8 and every entry is nonnegative.
// constraint_residuals holds |U~^T Sigma~ U~ - scale*I|_F after each eigen
// step. iterations counts alternation rounds, excluding the initial solve.
struct SolverState {
  Eigen::MatrixXd stacked;  // final U~, (V*M) x T
  std::vector<double> objective_history;
  std::vector<double> constraint_residuals;
  Eigen::VectorXd eigenvalues;  // gamma of the final eigen step, ascending
  int iterations = 0;
  bool converged = false;
  int num_clusters = 0;
  std::vector<int> init_assignment;   // clustering that seeded the run
  std::vector<int> final_assignment;  // clustering at termination

  IndicatorMatrix indicator() const { return IndicatorMatrix(final_assignment, num_clusters); }
};

// A = lambda*D + (1/N) X~ (I - H H^T) X~^T, assembled blockwise: the
// (1/N) X~ X~^T part is block-diagonal with the per-view scatters, so the
// padded matrix never enters a full Gram product.
Eigen::MatrixXd assemble_objective_matrix(const BlockData& data, const IndicatorMatrix& h,
                                          double lambda);

// Solves the symmetric-definite generalized problem A u = gamma B u, returns
// the eigenvectors of the out_dim smallest eigenvalues as columns, each
// scaled so u^T B u = scale and sign-fixed (largest-magnitude entry
// positive). eigenvalues, when given, receives the selected gamma ascending.
// B must be SPD.
Eigen::MatrixXd solve_generalized(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  int out_dim, double scale,
                                  Eigen::VectorXd* eigenvalues = nullptr);

// The U~ update: smallest-out_dim generalized eigenvectors of (A, Sigma~)
// with A assembled from (data, h, lambda), columns scaled to u^T Sigma~ u = V.
// The trace-form objective of the result equals V * sum(gamma).
Eigen::MatrixXd solve_projection(const BlockData& data, const IndicatorMatrix& h, double lambda,
                                 int out_dim, Eigen::VectorXd* eigenvalues = nullptr);

// The full alternating optimization: k-means on the padded columns seeds H,
// then eigen steps alternate with warm-started k-means on the projected data
// until the objective decrement drops to cfg.epsilon or cfg.max_iter rounds.
std::pair<ProjectionModel, SolverState> camel_fit(const FeatureSet& fs, const CamelConfig& cfg);

// Symmetric ablation: one shared M x T transform for all views, learned by
// the same alternation on the plain data matrix with the pooled covariance
// constraint U^T Sigma-bar U = I (the consistency term is structurally zero).
ProjectionModel cmel_fit(const FeatureSet& fs, const CamelConfig& cfg);

// Supervised variant: H comes from the identity labels, so a single eigen
// step replaces the alternation. cfg.num_clusters is ignored; K becomes the
// number of distinct identities.
ProjectionModel camel_fit_supervised(const FeatureSet& fs, const CamelConfig& cfg);

// Fraction of nonempty clusters holding more than one distinct identity,
// plus the per-cluster distinct-identity counts (0 for empty clusters).
struct PurityReport {
  double rate_mixed = 0.0;
  int nonempty_clusters = 0;
  int mixed_clusters = 0;
  std::vector<int> distinct_identities;
};

PurityReport cluster_purity_report(const std::vector<int>& assignment,
                                   const std::vector<long>& identities, int num_clusters);

}  // namespace camel

#endif  // CAMEL_SOLVER_HPP
