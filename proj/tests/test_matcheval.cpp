#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <vector>

#include "camel/matcheval.hpp"
#include "camel/model.hpp"
#include "camel/rng.hpp"
#include "camel/types.hpp"

using namespace camel;

namespace {

Sample make_sample(int view, long identity, std::initializer_list<double> values) {
  Sample s;
  s.view = view;
  s.identity = identity;
  s.feature = Eigen::VectorXd(static_cast<Eigen::Index>(values.size()));
  Eigen::Index j = 0;
  for (double v : values) s.feature[j++] = v;
  return s;
}

ProjectionModel random_model(Rng* rng, int num_views, int dim, int out_dim) {
  ProjectionModel model;
  model.transforms.resize(static_cast<std::size_t>(num_views));
  for (auto& u : model.transforms) {
    u.resize(dim, out_dim);
    for (Eigen::Index r = 0; r < dim; ++r)
      for (Eigen::Index c = 0; c < out_dim; ++c) u(r, c) = rng->gaussian();
  }
  return model;
}

// ids x per-view copies in every view, feature = one-hot-ish id signature + noise
FeatureSet labeled_set(Rng* rng, int num_views, int ids, int per, int dim, double noise) {
  std::vector<Sample> samples;
  for (int p = 1; p <= num_views; ++p)
    for (int id = 0; id < ids; ++id)
      for (int c = 0; c < per; ++c) {
        Sample s;
        s.view = p;
        s.identity = static_cast<long>(id);
        s.feature = Eigen::VectorXd::Zero(dim);
        s.feature[id % dim] = 1.0 + 0.1 * id;
        for (int j = 0; j < dim; ++j) s.feature[j] += noise * rng->gaussian();
        samples.push_back(std::move(s));
      }
  return FeatureSet(num_views, samples);
}

}  // namespace

TEST_CASE("asymmetric distance on a hand pair") {
  ProjectionModel model;
  Eigen::MatrixXd u1(2, 2), u2(2, 2);
  u1 << 1, 0, 0, 1;
  u2 << 0, 1, 1, 0;  // swaps coordinates
  model.transforms = {u1, u2};

  Eigen::VectorXd x(2), y(2);
  x << 1, 0;
  y << 0, 2;
  // U1^T x = (1,0); U2^T y = (2,0); distance = 1
  CHECK(asymmetric_distance(model, x, 1, y, 2) == doctest::Approx(1.0).epsilon(1e-14));
  // U1^T x = (1,0); U1^T y = (0,2); distance = sqrt(5)
  CHECK(asymmetric_distance(model, x, 1, y, 1) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("distance is zero iff projections coincide, and symmetric in its arguments") {
  Rng rng(41);
  ProjectionModel model = random_model(&rng, 3, 4, 3);
  Eigen::VectorXd x(4), y(4);
  for (int i = 0; i < 4; ++i) {
    x[i] = rng.gaussian();
    y[i] = rng.gaussian();
  }
  CHECK(asymmetric_distance(model, x, 2, x, 2) == 0.0);
  CHECK(asymmetric_distance(model, x, 1, y, 3) ==
        doctest::Approx(asymmetric_distance(model, y, 3, x, 1)).epsilon(1e-14));
  CHECK(asymmetric_distance(model, x, 1, y, 3) >= 0.0);
}

TEST_CASE("distance matches the explicit projection formula") {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    ProjectionModel model = random_model(&rng, 2, 5, 3);
    Eigen::VectorXd x(5), y(5);
    for (int i = 0; i < 5; ++i) {
      x[i] = rng.gaussian();
      y[i] = rng.gaussian();
    }
    const double direct =
        (model.transforms[0].transpose() * x - model.transforms[1].transpose() * y).norm();
    CHECK(asymmetric_distance(model, x, 1, y, 2) == doctest::Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("identity model reduces to Euclidean distance") {
  Rng rng(43);
  const ProjectionModel model = ProjectionModel::identity(2, 6);
  Eigen::VectorXd x(6), y(6);
  for (int i = 0; i < 6; ++i) {
    x[i] = rng.gaussian();
    y[i] = rng.gaussian();
  }
  CHECK(asymmetric_distance(model, x, 1, y, 2) == doctest::Approx((x - y).norm()).epsilon(1e-14));
}

TEST_CASE("distance rejects bad views and dimension mismatches") {
  Rng rng(44);
  ProjectionModel model = random_model(&rng, 2, 3, 2);
  Eigen::VectorXd ok(3), bad(4);
  ok.setZero();
  bad.setZero();
  CHECK_THROWS_AS(asymmetric_distance(model, ok, 0, ok, 1), DataError);
  CHECK_THROWS_AS(asymmetric_distance(model, ok, 1, ok, 3), DataError);
  CHECK_THROWS_AS(asymmetric_distance(model, bad, 1, ok, 2), DataError);
  CHECK_THROWS_AS(asymmetric_distance(model, ok, 1, bad, 2), DataError);
}

TEST_CASE("orthogonal shared transform preserves Euclidean rankings") {
  Rng rng(45);
  Eigen::MatrixXd g(5, 5);
  for (Eigen::Index r = 0; r < 5; ++r)
    for (Eigen::Index c = 0; c < 5; ++c) g(r, c) = rng.gaussian();
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  ProjectionModel model;
  model.transforms = {q, q};
  Eigen::VectorXd x(5), y(5);
  for (int i = 0; i < 5; ++i) {
    x[i] = rng.gaussian();
    y[i] = rng.gaussian();
  }
  CHECK(asymmetric_distance(model, x, 1, y, 2) == doctest::Approx((x - y).norm()).epsilon(1e-10));
}

TEST_CASE("single-shot split takes one gallery image per identity from view 1") {
  Rng rng(46);
  FeatureSet fs = labeled_set(&rng, 3, 7, 2, 4, 0.01);  // 7 ids, 2 copies, 3 views
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 5);
  CHECK(split.shots == 1);
  CHECK(split.gallery_view == 1);
  CHECK(split.gallery.size() == 7);
  CHECK(split.probes.size() == 7 * 2 * 2);  // all images of views 2 and 3
  CHECK(split.excluded_identities.empty());

  std::set<long> gallery_ids;
  for (const auto& e : split.gallery) {
    CHECK(e.view == 1);
    CHECK(fs.view_of(e.sample) == 1);
    CHECK(fs.identity_of(e.sample) == e.identity);
    gallery_ids.insert(e.identity);
  }
  CHECK(gallery_ids.size() == 7);
  for (const auto& e : split.probes) CHECK(e.view >= 2);
}

TEST_CASE("multi-shot split draws `shots` gallery images and excludes short identities") {
  Rng rng(47);
  std::vector<Sample> samples;
  for (int id = 0; id < 5; ++id) {
    const int copies = id == 4 ? 2 : 3;  // identity 4 is one short
    for (int c = 0; c < copies; ++c)
      samples.push_back(make_sample(1, id, {static_cast<double>(id), static_cast<double>(c)}));
    samples.push_back(make_sample(2, id, {static_cast<double>(id), -1.0}));
  }
  FeatureSet fs(2, samples);
  const GalleryProbeSplit split = build_split(fs, Protocol::kMulti, 3, 9);
  CHECK(split.gallery.size() == 4 * 3);
  CHECK(split.excluded_identities == std::vector<long>{4});
  CHECK(split.probes.size() == 5);  // all view-2 images probe, including identity 4's

  // per-identity count is exactly `shots`
  std::map<long, int> counts;
  for (const auto& e : split.gallery) ++counts[e.identity];
  for (const auto& [id, n] : counts) CHECK(n == 3);
}

TEST_CASE("splits are deterministic in the seed") {
  Rng rng(48);
  FeatureSet fs = labeled_set(&rng, 2, 10, 4, 3, 0.01);
  const GalleryProbeSplit a = build_split(fs, Protocol::kMulti, 2, 77);
  const GalleryProbeSplit b = build_split(fs, Protocol::kMulti, 2, 77);
  REQUIRE(a.gallery.size() == b.gallery.size());
  for (std::size_t i = 0; i < a.gallery.size(); ++i)
    CHECK(a.gallery[i].sample == b.gallery[i].sample);

  // different seeds eventually pick different gallery subsets
  bool any_diff = false;
  for (std::uint64_t s = 0; s < 20 && !any_diff; ++s) {
    const GalleryProbeSplit c = build_split(fs, Protocol::kMulti, 2, s);
    for (std::size_t i = 0; i < a.gallery.size(); ++i)
      any_diff = any_diff || c.gallery[i].sample != a.gallery[i].sample;
  }
  CHECK(any_diff);
}

TEST_CASE("single-shot protocol with more than one shot is rejected") {
  Rng rng(49);
  FeatureSet fs = labeled_set(&rng, 2, 4, 2, 3, 0.01);
  CHECK_THROWS_AS(build_split(fs, Protocol::kSingle, 2, 0), DataError);
  CHECK_THROWS_AS(build_split(fs, Protocol::kMulti, 0, 0), DataError);
}

TEST_CASE("split on an unlabeled set is rejected") {
  FeatureSet fs(2, {make_sample(1, -1, {0.0}), make_sample(2, -1, {1.0})});
  CHECK_THROWS_AS(build_split(fs, Protocol::kSingle, 1, 0), DataError);
}

TEST_CASE("perfectly separated data ranks its identity first") {
  Rng rng(50);
  FeatureSet fs = labeled_set(&rng, 2, 6, 2, 8, 0.001);
  const ProjectionModel model = ProjectionModel::identity(2, 8);
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 3);
  const RankingResult r = rank_gallery(model, split, fs);
  CHECK(r.evaluated_probes == static_cast<int>(split.probes.size()));
  CHECK(r.excluded_probes == 0);
  REQUIRE(r.cmc.size() == 6);
  CHECK(r.cmc[0] == 1.0);
  CHECK(r.cmc[5] == 1.0);
  CHECK(r.map == 1.0);
  for (const auto& pr : r.rankings) {
    CHECK(pr.truth_rank == 1);
    CHECK(pr.ranked_identities.front() == pr.truth);
    CHECK(pr.average_precision == 1.0);
  }
}

TEST_CASE("hand-built ranking: CMC curve and per-probe ranks") {
  // 1-D features; gallery view 1 has ids 0 at 0.0 and 1 at 10.0.
  // probe id 0 at 0.4 -> rank 1; probe id 1 at 4.0 -> nearer to id 0, rank 2.
  FeatureSet fs(2, {make_sample(1, 0, {0.0}), make_sample(1, 1, {10.0}),
                    make_sample(2, 0, {0.4}), make_sample(2, 1, {4.0})});
  const ProjectionModel model = ProjectionModel::identity(2, 1);
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 0);
  const RankingResult r = rank_gallery(model, split, fs);
  REQUIRE(r.rankings.size() == 2);
  CHECK(r.rankings[0].truth_rank == 1);
  CHECK(r.rankings[1].truth_rank == 2);
  REQUIRE(r.cmc.size() == 2);
  CHECK(r.cmc[0] == 0.5);
  CHECK(r.cmc[1] == 1.0);
  CHECK(r.map == doctest::Approx((1.0 + 0.5) / 2.0).epsilon(1e-14));
  // cmc is non-decreasing and capped at 1
  for (std::size_t k = 1; k < r.cmc.size(); ++k) CHECK(r.cmc[k] >= r.cmc[k - 1]);
  CHECK(r.cmc.back() <= 1.0);
}

TEST_CASE("equidistant identities rank the lower id first") {
  FeatureSet fs(2, {make_sample(1, 3, {1.0}), make_sample(1, 8, {-1.0}),
                    make_sample(2, 8, {0.0})});
  const ProjectionModel model = ProjectionModel::identity(2, 1);
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 0);
  const RankingResult r = rank_gallery(model, split, fs);
  REQUIRE(r.rankings.size() == 1);
  CHECK(r.rankings[0].ranked_identities == std::vector<long>{3, 8});
  CHECK(r.rankings[0].truth_rank == 2);
}

TEST_CASE("identity score is the minimum distance over its gallery images") {
  // id 0 has a far and a near gallery image; the near one must win the rank
  FeatureSet fs(2, {make_sample(1, 0, {0.0}), make_sample(1, 0, {100.0}),
                    make_sample(1, 1, {3.0}), make_sample(1, 1, {200.0}),
                    make_sample(2, 0, {1.0})});
  const ProjectionModel model = ProjectionModel::identity(2, 1);
  GalleryProbeSplit split;
  split.shots = 2;
  split.gallery_view = 1;
  for (int i = 0; i < 4; ++i)
    split.gallery.push_back({i, fs.identity_of(i), 1});
  split.probes.push_back({4, 0, 2});
  const RankingResult r = rank_gallery(model, split, fs);
  CHECK(r.rankings[0].ranked_identities == std::vector<long>{0, 1});
  CHECK(r.rankings[0].truth_rank == 1);
  // image granularity: distances 1, 2, 99, 199 put the relevant images at
  // ranks 1 and 3, so AP = (1/1 + 2/3) / 2
  CHECK(r.rankings[0].average_precision ==
        doctest::Approx((1.0 + 2.0 / 3.0) / 2.0).epsilon(1e-14));
}

TEST_CASE("probes without any gallery image of their identity are excluded") {
  FeatureSet fs(2, {make_sample(1, 0, {0.0}), make_sample(2, 0, {0.1}),
                    make_sample(2, 5, {9.0})});
  const ProjectionModel model = ProjectionModel::identity(2, 1);
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 0);
  const RankingResult r = rank_gallery(model, split, fs);
  CHECK(r.evaluated_probes == 1);
  CHECK(r.excluded_probes == 1);
  CHECK(r.rankings.size() == 1);
  CHECK(r.rankings[0].truth == 0);
}

TEST_CASE("average precision hand values") {
  CHECK(average_precision({1}) == 1.0);
  CHECK(average_precision({0, 1}) == 0.5);
  // relevant at ranks 1 and 3: (1/1 + 2/3) / 2
  CHECK(average_precision({1, 0, 1}) == (1.0 + 2.0 / 3.0) / 2.0);
  CHECK(average_precision({1, 1, 1}) == 1.0);
  CHECK(average_precision({0, 0, 1, 1}) == doctest::Approx((1.0 / 3.0 + 2.0 / 4.0) / 2.0));
  CHECK_THROWS_AS(average_precision({0, 0}), DataError);
  CHECK_THROWS_AS(average_precision({}), DataError);
}

TEST_CASE("mean average precision skips empty probes and counts them") {
  int excluded = -1;
  const double value =
      mean_average_precision({{1}, {0, 0}, {0, 1}}, &excluded);
  CHECK(value == doctest::Approx((1.0 + 0.5) / 2.0).epsilon(1e-14));
  CHECK(excluded == 1);
  CHECK_THROWS_AS(mean_average_precision({{0}, {0, 0}}), DataError);
}

TEST_CASE("rankings are invariant to a global feature scale with the identity model") {
  Rng rng(51);
  FeatureSet fs = labeled_set(&rng, 2, 8, 2, 5, 0.2);
  std::vector<Sample> scaled;
  for (int i = 0; i < fs.size(); ++i) {
    Sample s;
    s.view = fs.view_of(i);
    s.identity = fs.identity_of(i);
    s.feature = 7.0 * fs.feature(i);
    scaled.push_back(std::move(s));
  }
  FeatureSet fs2(2, scaled);
  const ProjectionModel model = ProjectionModel::identity(2, 5);
  const GalleryProbeSplit split = build_split(fs, Protocol::kSingle, 1, 4);
  const RankingResult a = rank_gallery(model, split, fs);
  const RankingResult b = rank_gallery(model, split, fs2);
  REQUIRE(a.rankings.size() == b.rankings.size());
  for (std::size_t i = 0; i < a.rankings.size(); ++i)
    CHECK(a.rankings[i].ranked_identities == b.rankings[i].ranked_identities);
  CHECK(a.map == doctest::Approx(b.map).epsilon(1e-12));
}

TEST_CASE("rank_gallery agrees with a brute-force oracle") {
  Rng rng(52);
  for (int trial = 0; trial < 10; ++trial) {
    FeatureSet fs = labeled_set(&rng, 2, 5, 3, 4, 1.0);  // noisy: nontrivial rankings
    ProjectionModel model = random_model(&rng, 2, 4, 3);
    const GalleryProbeSplit split = build_split(fs, Protocol::kMulti, 2, trial);
    const RankingResult r = rank_gallery(model, split, fs);

    REQUIRE(r.rankings.size() == split.probes.size());
    for (std::size_t pi = 0; pi < split.probes.size(); ++pi) {
      const auto& probe = split.probes[pi];
      // oracle: min distance per identity, sort by (distance, id)
      std::map<long, double> best;
      for (const auto& g : split.gallery) {
        if (g.identity == probe.identity && g.view == probe.view) continue;
        const double d = asymmetric_distance(model, fs.feature(probe.sample), probe.view,
                                             fs.feature(g.sample), g.view);
        auto it = best.find(g.identity);
        if (it == best.end() || d < it->second) best[g.identity] = d;
      }
      std::vector<std::pair<double, long>> order;
      order.reserve(best.size());
      for (const auto& [id, d] : best) order.emplace_back(d, id);
      std::sort(order.begin(), order.end());
      REQUIRE(order.size() == r.rankings[pi].ranked_identities.size());
      for (std::size_t k = 0; k < order.size(); ++k)
        CHECK(order[k].second == r.rankings[pi].ranked_identities[k]);

      const int rank = r.rankings[pi].truth_rank;
      REQUIRE(rank >= 1);
      CHECK(order[static_cast<std::size_t>(rank - 1)].second == probe.identity);
    }

    // CMC from the per-probe ranks
    std::vector<double> cmc(r.cmc.size(), 0.0);
    for (const auto& pr : r.rankings)
      for (std::size_t k = static_cast<std::size_t>(pr.truth_rank - 1); k < cmc.size(); ++k)
        cmc[k] += 1.0;
    for (auto& v : cmc) v /= static_cast<double>(r.rankings.size());
    for (std::size_t k = 0; k < cmc.size(); ++k)
      CHECK(r.cmc[k] == doctest::Approx(cmc[k]).epsilon(1e-14));
  }
}
