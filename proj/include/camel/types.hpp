#ifndef CAMEL_TYPES_HPP
#define CAMEL_TYPES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace camel {

// Errors caused by malformed or inconsistent input (files, shapes, labels).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Errors caused by numerical breakdown (singular matrices, non-finite values).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// One feature record: which camera view it came from, an optional identity
// label, and the feature vector itself.
struct Sample {
  int view = 0;        // 1-based camera view id
  long identity = -1;  // -1 when unlabeled
  Eigen::VectorXd feature;
};

// A multi-view training/evaluation set. Samples are stored as columns of an
// M x N matrix, grouped by ascending view id with the input order preserved
// within each view, so downstream block constructions are deterministic.
//
// Either all samples carry an identity label or none do.
class FeatureSet {
 public:
  FeatureSet(int num_views, const std::vector<Sample>& samples);

  // Build from per-view column matrices (all M x N_p). identities, when
  // nonempty, must have one inner vector per view.
  static FeatureSet from_views(const std::vector<Eigen::MatrixXd>& view_features,
                               const std::vector<std::vector<long>>& identities = {});

  int num_views() const { return num_views_; }
  int dim() const { return static_cast<int>(features_.rows()); }
  int size() const { return static_cast<int>(features_.cols()); }

  int view_count(int view) const;   // N_p
  int view_offset(int view) const;  // first column index of view p

  const Eigen::MatrixXd& features() const { return features_; }
  Eigen::Ref<const Eigen::MatrixXd> view_features(int view) const;

  Eigen::Ref<const Eigen::VectorXd> feature(int i) const { return features_.col(i); }
  int view_of(int i) const { return view_of_[static_cast<std::size_t>(i)]; }

  bool labeled() const { return !identity_.empty(); }
  long identity_of(int i) const;
  const std::vector<long>& identities() const { return identity_; }

 private:
  FeatureSet() = default;
  void check_view(int view) const;

  int num_views_ = 0;
  Eigen::MatrixXd features_;       // M x N, columns grouped by view
  std::vector<int> view_of_;       // per-column view id (1-based)
  std::vector<int> view_offsets_;  // size V+1, view p occupies [offsets[p-1], offsets[p])
  std::vector<long> identity_;     // empty when unlabeled
};

// Training hyperparameters. out_dim = 0 keeps the original feature dimension;
// alpha < 0 selects the automatic ridge (1% of the mean per-feature variance,
// computed per view).
struct CamelConfig {
  double lambda = 0.01;       // cross-view consistency weight
  int num_clusters = 500;     // K
  int out_dim = 0;            // T
  double alpha = -1.0;        // ridge added to per-view covariances
  double epsilon = 1e-8;      // stop when the objective decrement falls below this
  int max_iter = 100;
  std::uint64_t seed = 0;

  // Resolves out_dim against the data dimensions and validates all fields.
  // max_out_dim is V*M for the asymmetric model and M for the symmetric one.
  int resolve_out_dim(int feature_dim, int max_out_dim) const;
  void validate() const;
};

}  // namespace camel

#endif  // CAMEL_TYPES_HPP
