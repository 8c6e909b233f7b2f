#ifndef CAMEL_MATCHEVAL_HPP
#define CAMEL_MATCHEVAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "camel/model.hpp"
#include "camel/types.hpp"

namespace camel {

// d(x,p,y,q) = |U^p^T x - U^q^T y|_2. Views are 1-based.
double asymmetric_distance(const ProjectionModel& model, const Eigen::VectorXd& x, int view_x,
                           const Eigen::VectorXd& y, int view_y);

enum class Protocol { kSingle, kMulti };

struct SplitEntry {
  int sample = -1;  // column index into the FeatureSet
  long identity = -1;
  int view = 0;
};

// Cross-view evaluation split. The gallery holds `shots` images per identity,
// drawn from the gallery view (view 1); probes are every image of the other
// views. Identities without enough gallery-view images are left out of the
// gallery and reported.
struct GalleryProbeSplit {
  int shots = 1;
  int gallery_view = 1;
  std::vector<SplitEntry> gallery;
  std::vector<SplitEntry> probes;
  std::vector<long> excluded_identities;
};

GalleryProbeSplit build_split(const FeatureSet& fs, Protocol protocol, int shots,
                              std::uint64_t seed);

struct ProbeRanking {
  int probe_sample = -1;
  long truth = -1;
  std::vector<long> ranked_identities;  // best-distance-first; ties to the lower id
  int truth_rank = 0;                   // 1-based position of the truth, 0 if absent
  double average_precision = 0.0;
};

struct RankingResult {
  std::vector<ProbeRanking> rankings;  // evaluated probes in probe order
  std::vector<double> cmc;             // rank-k accuracy, k = 1..#gallery identities
  double map = 0.0;
  int evaluated_probes = 0;
  int excluded_probes = 0;  // probes with no cross-view gallery image of their identity
};

// Ranks every probe against the gallery. Identity score is the minimum
// distance over that identity's gallery images; gallery images sharing both
// identity and view with the probe are ignored. mAP is computed at image
// granularity over the same ranking.
RankingResult rank_gallery(const ProjectionModel& model, const GalleryProbeSplit& split,
                           const FeatureSet& fs);

// AP over a ranked relevance sequence (1 = relevant): mean over relevant
// items of precision at their rank. Requires at least one relevant item.
double average_precision(const std::vector<int>& relevance);

// Mean AP over probes; probes without any relevant item are skipped and
// counted into *excluded when given. Fails if no probe has a relevant item.
double mean_average_precision(const std::vector<std::vector<int>>& relevance,
                              int* excluded = nullptr);

}  // namespace camel

#endif  // CAMEL_MATCHEVAL_HPP
