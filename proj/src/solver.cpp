#include "camel/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "camel/kmeans.hpp"
#include "camel/objective.hpp"

namespace camel {

namespace {

double constraint_residual(const Eigen::MatrixXd& u, const Eigen::MatrixXd& cov, double scale) {
  const Eigen::MatrixXd gram = u.transpose() * cov * u;
  return (gram - scale * Eigen::MatrixXd::Identity(u.cols(), u.cols())).norm();
}

void check_finite(double value, const std::string& where) {
  if (!std::isfinite(value))
    throw NumericalError("objective became non-finite " + where +
                         "; the input data or ridge is ill-conditioned");
}

std::vector<Eigen::MatrixXd> split_stacked(const Eigen::MatrixXd& stacked, int num_views) {
  const Eigen::Index m = stacked.rows() / num_views;
  std::vector<Eigen::MatrixXd> transforms;
  transforms.reserve(static_cast<std::size_t>(num_views));
  for (int p = 0; p < num_views; ++p) transforms.push_back(stacked.middleRows(p * m, m));
  return transforms;
}

}  // namespace

Eigen::MatrixXd assemble_objective_matrix(const BlockData& data, const IndicatorMatrix& h,
                                          double lambda) {
  if (h.rows() != data.total)
    throw std::invalid_argument("assemble_objective_matrix: indicator row count mismatch");
  if (lambda < 0.0) throw std::invalid_argument("assemble_objective_matrix: negative lambda");

  const int m = data.dim;
  const int vm = data.num_views * m;
  const double n = static_cast<double>(data.total);

  // (1/N) X~ X~^T is block-diagonal with the per-view scatters.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(vm, vm);
  for (int p = 0; p < data.num_views; ++p)
    a.block(p * m, p * m, m, m) = data.scatter[static_cast<std::size_t>(p)] / n;

  // lambda * D: (V-1)I diagonal blocks, -I off-diagonal.
  if (lambda > 0.0) {
    for (int p = 0; p < data.num_views; ++p)
      for (int q = 0; q < data.num_views; ++q) {
        const double w = (p == q) ? lambda * (data.num_views - 1) : -lambda;
        a.block(p * m, q * m, m, m).diagonal().array() += w;
      }
  }

  // minus (1/N)(X~H)(X~H)^T, kept exactly symmetric via the rank update.
  const Eigen::MatrixXd xh = data.padded_times(h);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(vm, vm);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(xh);
  gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
  a -= gram / n;
  return a;
}

Eigen::MatrixXd solve_generalized(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                  int out_dim, double scale, Eigen::VectorXd* eigenvalues) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n)
    throw std::invalid_argument("solve_generalized: matrices must be square and equally sized");
  if (out_dim < 1 || out_dim > n)
    throw std::invalid_argument("solve_generalized: out_dim out of range");
  if (!(scale > 0.0)) throw std::invalid_argument("solve_generalized: scale must be positive");

  Eigen::LLT<Eigen::MatrixXd> llt(b);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve_generalized: constraint matrix is not positive definite");

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(a, b,
                                                                Eigen::ComputeEigenvectors |
                                                                    Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success)
    throw NumericalError("solve_generalized: eigen-decomposition failed to converge");

  Eigen::MatrixXd u = ges.eigenvectors().leftCols(out_dim);
  for (int t = 0; t < out_dim; ++t) {
    // enforce u^T B u = scale explicitly rather than trusting the solver's
    // normalization convention
    const double q = u.col(t).dot(b * u.col(t));
    if (!(q > 0.0))
      throw NumericalError("solve_generalized: eigenvector with nonpositive B-norm");
    u.col(t) *= std::sqrt(scale / q);
    Eigen::Index imax = 0;
    u.col(t).cwiseAbs().maxCoeff(&imax);
    if (u(imax, t) < 0.0) u.col(t) = -u.col(t);
  }
  if (eigenvalues) *eigenvalues = ges.eigenvalues().head(out_dim);
  return u;
}

Eigen::MatrixXd solve_projection(const BlockData& data, const IndicatorMatrix& h, double lambda,
                                 int out_dim, Eigen::VectorXd* eigenvalues) {
  const Eigen::MatrixXd a = assemble_objective_matrix(data, h, lambda);
  return solve_generalized(a, data.block_cov, out_dim, static_cast<double>(data.num_views),
                           eigenvalues);
}

std::pair<ProjectionModel, SolverState> camel_fit(const FeatureSet& fs, const CamelConfig& cfg) {
  cfg.validate();
  const int num_views = fs.num_views();
  const int out_dim = cfg.resolve_out_dim(fs.dim(), num_views * fs.dim());
  const int k = cfg.num_clusters;

  const BlockData data = build_block_data(fs, cfg.alpha);

  SolverState state;
  state.num_clusters = k;

  // Initialize H by clustering the zero-padded columns themselves.
  KMeansResult init = kmeans(data.padded, k, cfg.seed);
  state.init_assignment = init.assignment;
  std::vector<int> assignment = init.assignment;
  IndicatorMatrix h(assignment, k);

  Eigen::VectorXd gamma;
  Eigen::MatrixXd u = solve_projection(data, h, cfg.lambda, out_dim, &gamma);
  state.constraint_residuals.push_back(constraint_residual(u, data.block_cov, num_views));

  Eigen::MatrixXd y = data.project(u);
  ObjectiveBreakdown br = objective_centered(y, assignment, k, u, num_views, cfg.lambda);
  check_finite(br.total, "after the initial eigen step");
  state.objective_history.push_back(br.total);

  // Carry centroids across rounds so a cluster that went empty keeps a
  // deterministic (stale) position instead of being re-seeded.
  Eigen::MatrixXd centroids = u.transpose() * init.centroids;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    update_centroids(y, assignment, &centroids);
    KMeansResult km = lloyd(y, std::move(centroids));
    assignment = km.assignment;
    centroids = std::move(km.centroids);
    h = IndicatorMatrix(assignment, k);

    u = solve_projection(data, h, cfg.lambda, out_dim, &gamma);
    state.constraint_residuals.push_back(constraint_residual(u, data.block_cov, num_views));

    y = data.project(u);
    br = objective_centered(y, assignment, k, u, num_views, cfg.lambda);
    check_finite(br.total, "at iteration " + std::to_string(it));

    const double drop = state.objective_history.back() - br.total;
    state.objective_history.push_back(br.total);
    state.iterations = it;
    if (drop <= cfg.epsilon) {
      state.converged = true;
      break;
    }
  }

  state.stacked = u;
  state.eigenvalues = gamma;
  state.final_assignment = assignment;

  ProjectionModel model;
  model.transforms = split_stacked(u, num_views);
  model.config = cfg;
  model.config.out_dim = out_dim;
  model.final_objective = state.objective_history.back();
  model.iterations = state.iterations;
  model.converged = state.converged;
  model.objective_history = state.objective_history;
  return {std::move(model), std::move(state)};
}

ProjectionModel cmel_fit(const FeatureSet& fs, const CamelConfig& cfg) {
  cfg.validate();
  const int num_views = fs.num_views();
  const int out_dim = cfg.resolve_out_dim(fs.dim(), fs.dim());
  const int k = cfg.num_clusters;

  const BlockData data = build_block_data(fs, cfg.alpha);
  const Eigen::MatrixXd& x = fs.features();
  const double n = static_cast<double>(fs.size());

  // Pooled covariance and pooled scatter: the shared transform sees all
  // views through one M x M problem.
  Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(fs.dim(), fs.dim());
  Eigen::MatrixXd xxt = Eigen::MatrixXd::Zero(fs.dim(), fs.dim());
  for (int p = 0; p < num_views; ++p) {
    pooled += data.view_cov[static_cast<std::size_t>(p)];
    xxt += data.scatter[static_cast<std::size_t>(p)];
  }
  pooled /= static_cast<double>(num_views);

  const auto assemble = [&](const IndicatorMatrix& h) {
    const Eigen::MatrixXd xh = x * h;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(fs.dim(), fs.dim());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(xh);
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    return Eigen::MatrixXd((xxt - gram) / n);
  };

  // Same pipeline as camel_fit: the initial clustering runs on the padded
  // columns; only the solve is pooled because the transforms are tied.
  KMeansResult init = kmeans(data.padded, k, cfg.seed);
  std::vector<int> assignment = init.assignment;
  IndicatorMatrix h(assignment, k);

  Eigen::VectorXd gamma;
  Eigen::MatrixXd u = solve_generalized(assemble(h), pooled, out_dim, 1.0, &gamma);
  Eigen::MatrixXd y = u.transpose() * x;
  ObjectiveBreakdown br = objective_centered(y, assignment, k, u, 1, cfg.lambda);
  check_finite(br.total, "after the initial eigen step");

  std::vector<double> history{br.total};
  Eigen::MatrixXd stacked_u(num_views * fs.dim(), out_dim);
  for (int p = 0; p < num_views; ++p) stacked_u.middleRows(p * fs.dim(), fs.dim()) = u;
  Eigen::MatrixXd centroids = stacked_u.transpose() * init.centroids;
  int iterations = 0;
  bool converged = false;

  for (int it = 1; it <= cfg.max_iter; ++it) {
    update_centroids(y, assignment, &centroids);
    KMeansResult km = lloyd(y, std::move(centroids));
    assignment = km.assignment;
    centroids = std::move(km.centroids);
    h = IndicatorMatrix(assignment, k);

    u = solve_generalized(assemble(h), pooled, out_dim, 1.0, &gamma);
    y = u.transpose() * x;
    br = objective_centered(y, assignment, k, u, 1, cfg.lambda);
    check_finite(br.total, "at iteration " + std::to_string(it));

    const double drop = history.back() - br.total;
    history.push_back(br.total);
    iterations = it;
    if (drop <= cfg.epsilon) {
      converged = true;
      break;
    }
  }

  ProjectionModel model;
  model.transforms.assign(static_cast<std::size_t>(num_views), u);
  model.config = cfg;
  model.config.out_dim = out_dim;
  model.final_objective = history.back();
  model.iterations = iterations;
  model.converged = converged;
  model.objective_history = std::move(history);
  return model;
}

ProjectionModel camel_fit_supervised(const FeatureSet& fs, const CamelConfig& cfg) {
  cfg.validate();
  if (!fs.labeled()) throw DataError("camel_fit_supervised: identity labels are required");
  const int num_views = fs.num_views();
  const int out_dim = cfg.resolve_out_dim(fs.dim(), num_views * fs.dim());

  // Clusters are the identity groups, indexed in ascending label order.
  std::vector<long> ids = fs.identities();
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  const int k = static_cast<int>(ids.size());
  std::vector<int> assignment(static_cast<std::size_t>(fs.size()));
  for (int i = 0; i < fs.size(); ++i) {
    const auto it = std::lower_bound(ids.begin(), ids.end(), fs.identity_of(i));
    assignment[static_cast<std::size_t>(i)] = static_cast<int>(it - ids.begin());
  }

  const BlockData data = build_block_data(fs, cfg.alpha);
  const IndicatorMatrix h(assignment, k);
  Eigen::VectorXd gamma;
  const Eigen::MatrixXd u = solve_projection(data, h, cfg.lambda, out_dim, &gamma);
  const Eigen::MatrixXd y = data.project(u);
  const ObjectiveBreakdown br = objective_centered(y, assignment, k, u, num_views, cfg.lambda);
  check_finite(br.total, "in the supervised solve");

  ProjectionModel model;
  model.transforms = split_stacked(u, num_views);
  model.config = cfg;
  model.config.out_dim = out_dim;
  model.config.num_clusters = k;
  model.final_objective = br.total;
  model.iterations = 1;
  model.converged = true;
  model.objective_history = {br.total};
  return model;
}

PurityReport cluster_purity_report(const std::vector<int>& assignment,
                                   const std::vector<long>& identities, int num_clusters) {
  if (identities.empty()) throw DataError("cluster_purity_report: identity labels are required");
  if (assignment.size() != identities.size())
    throw std::invalid_argument("cluster_purity_report: assignment/label size mismatch");
  if (num_clusters < 1) throw std::invalid_argument("cluster_purity_report: bad cluster count");

  std::vector<std::vector<long>> members(static_cast<std::size_t>(num_clusters));
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int k = assignment[i];
    if (k < 0 || k >= num_clusters)
      throw std::invalid_argument("cluster_purity_report: cluster id out of range");
    members[static_cast<std::size_t>(k)].push_back(identities[i]);
  }

  PurityReport report;
  report.distinct_identities.assign(static_cast<std::size_t>(num_clusters), 0);
  for (int k = 0; k < num_clusters; ++k) {
    auto& ids = members[static_cast<std::size_t>(k)];
    if (ids.empty()) continue;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    report.distinct_identities[static_cast<std::size_t>(k)] = static_cast<int>(ids.size());
    ++report.nonempty_clusters;
    if (ids.size() > 1) ++report.mixed_clusters;
  }
  report.rate_mixed = report.nonempty_clusters == 0
                          ? 0.0
                          : static_cast<double>(report.mixed_clusters) / report.nonempty_clusters;
  return report;
}

}  // namespace camel
