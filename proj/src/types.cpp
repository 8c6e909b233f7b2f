#include "camel/types.hpp"

#include <algorithm>

namespace camel {

FeatureSet::FeatureSet(int num_views, const std::vector<Sample>& samples) {
  if (num_views < 2)
    throw DataError("FeatureSet: need at least 2 views, got " + std::to_string(num_views));
  if (samples.empty()) throw DataError("FeatureSet: no samples");

  const int dim = static_cast<int>(samples.front().feature.size());
  if (dim < 1) throw DataError("FeatureSet: empty feature vector");

  const bool has_labels = samples.front().identity >= 0;
  std::vector<int> counts(static_cast<std::size_t>(num_views), 0);
  for (const Sample& s : samples) {
    if (s.view < 1 || s.view > num_views)
      throw DataError("FeatureSet: view id " + std::to_string(s.view) +
                      " outside [1, " + std::to_string(num_views) + "]");
    if (s.feature.size() != dim)
      throw DataError("FeatureSet: inconsistent feature dimension (" +
                      std::to_string(s.feature.size()) + " vs " + std::to_string(dim) + ")");
    if ((s.identity >= 0) != has_labels)
      throw DataError("FeatureSet: identity labels must be present on all samples or none");
    ++counts[static_cast<std::size_t>(s.view - 1)];
  }
  for (int p = 0; p < num_views; ++p)
    if (counts[static_cast<std::size_t>(p)] == 0)
      throw DataError("FeatureSet: view " + std::to_string(p + 1) + " has no samples");

  num_views_ = num_views;
  view_offsets_.assign(static_cast<std::size_t>(num_views) + 1, 0);
  for (int p = 0; p < num_views; ++p)
    view_offsets_[static_cast<std::size_t>(p) + 1] =
        view_offsets_[static_cast<std::size_t>(p)] + counts[static_cast<std::size_t>(p)];

  const int total = view_offsets_.back();
  features_.resize(dim, total);
  view_of_.resize(static_cast<std::size_t>(total));
  if (has_labels) identity_.resize(static_cast<std::size_t>(total));

  // stable counting sort by view
  std::vector<int> cursor(view_offsets_.begin(), view_offsets_.end() - 1);
  for (const Sample& s : samples) {
    int& pos = cursor[static_cast<std::size_t>(s.view - 1)];
    features_.col(pos) = s.feature;
    view_of_[static_cast<std::size_t>(pos)] = s.view;
    if (has_labels) identity_[static_cast<std::size_t>(pos)] = s.identity;
    ++pos;
  }
}

FeatureSet FeatureSet::from_views(const std::vector<Eigen::MatrixXd>& view_features,
                                  const std::vector<std::vector<long>>& identities) {
  std::vector<Sample> samples;
  const int num_views = static_cast<int>(view_features.size());
  for (int p = 0; p < num_views; ++p) {
    const Eigen::MatrixXd& block = view_features[static_cast<std::size_t>(p)];
    for (int j = 0; j < block.cols(); ++j) {
      Sample s;
      s.view = p + 1;
      s.feature = block.col(j);
      if (!identities.empty()) s.identity = identities[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)];
      samples.push_back(std::move(s));
    }
  }
  return FeatureSet(num_views, samples);
}

void FeatureSet::check_view(int view) const {
  if (view < 1 || view > num_views_)
    throw DataError("FeatureSet: view id " + std::to_string(view) + " out of range");
}

int FeatureSet::view_count(int view) const {
  check_view(view);
  return view_offsets_[static_cast<std::size_t>(view)] - view_offsets_[static_cast<std::size_t>(view - 1)];
}

int FeatureSet::view_offset(int view) const {
  check_view(view);
  return view_offsets_[static_cast<std::size_t>(view - 1)];
}

Eigen::Ref<const Eigen::MatrixXd> FeatureSet::view_features(int view) const {
  check_view(view);
  return features_.middleCols(view_offset(view), view_count(view));
}

long FeatureSet::identity_of(int i) const {
  if (identity_.empty()) throw DataError("FeatureSet: set is unlabeled");
  return identity_[static_cast<std::size_t>(i)];
}

int CamelConfig::resolve_out_dim(int feature_dim, int max_out_dim) const {
  const int t = out_dim == 0 ? feature_dim : out_dim;
  if (t < 1 || t > max_out_dim)
    throw DataError("CamelConfig: output dimension " + std::to_string(t) +
                    " outside [1, " + std::to_string(max_out_dim) + "]");
  return t;
}

void CamelConfig::validate() const {
  if (lambda < 0.0) throw DataError("CamelConfig: lambda must be nonnegative");
  if (num_clusters < 2) throw DataError("CamelConfig: need at least 2 clusters");
  if (out_dim < 0) throw DataError("CamelConfig: output dimension must be positive (0 = keep input)");
  if (!(epsilon > 0.0)) throw DataError("CamelConfig: epsilon must be positive");
  if (max_iter < 1) throw DataError("CamelConfig: max_iter must be at least 1");
}

}  // namespace camel
