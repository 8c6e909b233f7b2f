#ifndef CAMEL_OBJECTIVE_HPP
#define CAMEL_OBJECTIVE_HPP

#include <Eigen/Dense>
#include <vector>

#include "camel/indicator.hpp"
#include "camel/types.hpp"

namespace camel {

struct ObjectiveBreakdown {
  double total = 0.0;        // intra / N + lambda * consistency
  double intra = 0.0;        // sum_k sum_{i in C_k} |U^p^T x_i - c_k|^2 (unnormalized)
  double consistency = 0.0;  // sum_{p<q} |U^p - U^q|_F^2
  int empty_clusters = 0;
};

// Direct evaluation over samples: projects every sample with its view's
// transform, forms each cluster's centroid as the mean of its projected
// members, and accumulates the squared deviations plus the pairwise
// transform discrepancies. Empty clusters contribute zero and are counted.
ObjectiveBreakdown objective_sum_form(const std::vector<Eigen::MatrixXd>& transforms,
                                      const FeatureSet& fs,
                                      const std::vector<int>& assignment,
                                      int num_clusters, double lambda);

// Trace evaluation on the block matrices:
//   (|Y|_F^2 - |Y H|_F^2) / N + lambda * tr(U~^T D U~),  Y = U~^T X~.
// Agrees with the sum form whenever centroids are cluster means.
double objective_trace_form(const Eigen::MatrixXd& stacked, const Eigen::MatrixXd& padded,
                            const IndicatorMatrix& h, const Eigen::MatrixXd& consistency,
                            double lambda);

// Same value computed from an already-projected Y (T x N); used by the
// solver loop, which carries Y anyway.
double objective_from_projection(const Eigen::MatrixXd& projected, const IndicatorMatrix& h,
                                 const Eigen::MatrixXd& stacked,
                                 const Eigen::MatrixXd& consistency, double lambda);

// Centered evaluation from an already-projected Y: cluster means are formed
// explicitly and squared deviations accumulated directly, so rounding can
// never drive the intra term below zero (the |Y|^2 - |YH|^2 difference can).
// `stacked` is sliced into its num_views row blocks for the consistency term.
ObjectiveBreakdown objective_centered(const Eigen::MatrixXd& projected,
                                      const std::vector<int>& assignment, int num_clusters,
                                      const Eigen::MatrixXd& stacked, int num_views,
                                      double lambda);

}  // namespace camel

#endif  // CAMEL_OBJECTIVE_HPP
