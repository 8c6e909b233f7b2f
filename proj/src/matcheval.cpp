#include "camel/matcheval.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "camel/rng.hpp"

namespace camel {

namespace {

void check_view(const ProjectionModel& model, int view) {
  if (view < 1 || view > model.num_views())
    throw DataError("unknown view id " + std::to_string(view) + " for a model with " +
                    std::to_string(model.num_views()) + " views");
}

}  // namespace

double asymmetric_distance(const ProjectionModel& model, const Eigen::VectorXd& x, int view_x,
                           const Eigen::VectorXd& y, int view_y) {
  model.validate();
  check_view(model, view_x);
  check_view(model, view_y);
  if (x.size() != model.dim() || y.size() != model.dim())
    throw DataError("asymmetric_distance: feature dimension does not match the model");
  return (model.transforms[static_cast<std::size_t>(view_x - 1)].transpose() * x -
          model.transforms[static_cast<std::size_t>(view_y - 1)].transpose() * y)
      .norm();
}

GalleryProbeSplit build_split(const FeatureSet& fs, Protocol protocol, int shots,
                              std::uint64_t seed) {
  if (!fs.labeled()) throw DataError("build_split: identity labels are required");
  if (shots < 1) throw DataError("build_split: shots must be at least 1");
  if (protocol == Protocol::kSingle && shots != 1)
    throw DataError("build_split: the single-shot protocol fixes shots = 1");

  GalleryProbeSplit split;
  split.shots = shots;

  // Candidate gallery images grouped by identity, ascending id for a
  // deterministic RNG consumption order.
  std::map<long, std::vector<int>> by_identity;
  const int off = fs.view_offset(split.gallery_view);
  const int cnt = fs.view_count(split.gallery_view);
  for (int i = off; i < off + cnt; ++i) by_identity[fs.identity_of(i)].push_back(i);

  Rng rng(seed);
  std::vector<long> gallery_ids;
  for (auto& [identity, samples] : by_identity) {
    if (static_cast<int>(samples.size()) < shots) {
      split.excluded_identities.push_back(identity);
      continue;
    }
    rng.shuffle(samples);
    std::vector<int> chosen(samples.begin(), samples.begin() + shots);
    std::sort(chosen.begin(), chosen.end());
    for (int s : chosen) split.gallery.push_back({s, identity, split.gallery_view});
    gallery_ids.push_back(identity);
  }
  if (split.gallery.empty())
    throw DataError("build_split: no identity has enough images in the gallery view");

  for (int i = 0; i < fs.size(); ++i) {
    if (fs.view_of(i) == split.gallery_view) continue;
    split.probes.push_back({i, fs.identity_of(i), fs.view_of(i)});
  }
  return split;
}

RankingResult rank_gallery(const ProjectionModel& model, const GalleryProbeSplit& split,
                           const FeatureSet& fs) {
  model.validate();
  if (model.dim() != fs.dim() || model.num_views() != fs.num_views())
    throw DataError("rank_gallery: model and feature set dimensions differ (model " +
                    std::to_string(model.num_views()) + "x" + std::to_string(model.dim()) +
                    ", data " + std::to_string(fs.num_views()) + "x" +
                    std::to_string(fs.dim()) + ")");
  if (split.gallery.empty() || split.probes.empty())
    throw DataError("rank_gallery: empty gallery or probe set");

  // Project the gallery once; the expression is identical to the one inside
  // asymmetric_distance, so distances below match it bit for bit.
  const std::size_t g = split.gallery.size();
  std::vector<Eigen::VectorXd> projected_gallery(g);
  for (std::size_t j = 0; j < g; ++j) {
    const SplitEntry& e = split.gallery[j];
    check_view(model, e.view);
    projected_gallery[j] =
        model.transforms[static_cast<std::size_t>(e.view - 1)].transpose() * fs.feature(e.sample);
  }

  std::vector<long> gallery_ids;
  for (const SplitEntry& e : split.gallery) gallery_ids.push_back(e.identity);
  std::sort(gallery_ids.begin(), gallery_ids.end());
  gallery_ids.erase(std::unique(gallery_ids.begin(), gallery_ids.end()), gallery_ids.end());

  RankingResult result;
  result.cmc.assign(gallery_ids.size(), 0.0);

  std::vector<std::tuple<double, long, std::size_t>> image_order;  // (distance, id, position)
  for (const SplitEntry& probe : split.probes) {
    check_view(model, probe.view);
    const Eigen::VectorXd projected_probe =
        model.transforms[static_cast<std::size_t>(probe.view - 1)].transpose() *
        fs.feature(probe.sample);

    image_order.clear();
    std::map<long, double> best;  // identity -> min distance
    for (std::size_t j = 0; j < g; ++j) {
      const SplitEntry& e = split.gallery[j];
      if (e.identity == probe.identity && e.view == probe.view) continue;  // same-view pair
      const double d = (projected_probe - projected_gallery[j]).norm();
      image_order.emplace_back(d, e.identity, j);
      const auto it = best.find(e.identity);
      if (it == best.end() || d < it->second) best[e.identity] = d;
    }
    if (best.find(probe.identity) == best.end()) {
      ++result.excluded_probes;
      continue;
    }

    ProbeRanking ranking;
    ranking.probe_sample = probe.sample;
    ranking.truth = probe.identity;

    std::vector<std::pair<double, long>> order;  // (distance, identity): ties sort by lower id
    order.reserve(best.size());
    for (const auto& [identity, d] : best) order.emplace_back(d, identity);
    std::sort(order.begin(), order.end());
    for (std::size_t r = 0; r < order.size(); ++r) {
      ranking.ranked_identities.push_back(order[r].second);
      if (order[r].second == probe.identity) ranking.truth_rank = static_cast<int>(r) + 1;
    }

    std::sort(image_order.begin(), image_order.end());
    std::vector<int> relevance;
    relevance.reserve(image_order.size());
    for (const auto& [d, identity, pos] : image_order)
      relevance.push_back(identity == probe.identity ? 1 : 0);
    ranking.average_precision = average_precision(relevance);

    result.rankings.push_back(std::move(ranking));
  }

  result.evaluated_probes = static_cast<int>(result.rankings.size());
  if (result.evaluated_probes == 0)
    throw DataError("rank_gallery: every probe lacks a cross-view gallery match");

  for (const ProbeRanking& r : result.rankings) {
    result.map += r.average_precision;
    if (r.truth_rank > 0)
      for (std::size_t k = static_cast<std::size_t>(r.truth_rank) - 1; k < result.cmc.size(); ++k)
        result.cmc[k] += 1.0;
  }
  result.map /= result.evaluated_probes;
  for (double& v : result.cmc) v /= result.evaluated_probes;
  return result;
}

double average_precision(const std::vector<int>& relevance) {
  int hits = 0;
  double sum = 0.0;
  for (std::size_t r = 0; r < relevance.size(); ++r) {
    if (relevance[r]) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(r + 1);
    }
  }
  if (hits == 0) throw DataError("average_precision: no relevant item in the ranking");
  return sum / hits;
}

double mean_average_precision(const std::vector<std::vector<int>>& relevance, int* excluded) {
  int skipped = 0;
  int used = 0;
  double sum = 0.0;
  for (const auto& probe : relevance) {
    const bool any = std::any_of(probe.begin(), probe.end(), [](int r) { return r != 0; });
    if (!any) {
      ++skipped;
      continue;
    }
    sum += average_precision(probe);
    ++used;
  }
  if (excluded) *excluded = skipped;
  if (used == 0) throw DataError("mean_average_precision: no probe has a relevant item");
  return sum / used;
}

}  // namespace camel
