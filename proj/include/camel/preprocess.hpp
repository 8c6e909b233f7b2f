#ifndef CAMEL_PREPROCESS_HPP
#define CAMEL_PREPROCESS_HPP

#include "camel/types.hpp"

namespace camel {

// Projects the pooled (all-view) features onto their top out_dim principal
// components. Components are ordered by decreasing variance and sign-fixed so
// each one's largest-magnitude entry is positive. Views and labels carry
// over; out_dim must not exceed the feature dimension.
FeatureSet pca_reduce(const FeatureSet& fs, int out_dim);

}  // namespace camel

#endif  // CAMEL_PREPROCESS_HPP
