#include "camel/synthetic.hpp"

#include <string>

#include "camel/rng.hpp"

namespace camel {

void SyntheticSpec::validate() const {
  if (views < 2) throw DataError("SyntheticSpec: need at least two views");
  if (ids < 1 || per_view_per_id < 1 || dim < 1 || latent_dim < 1)
    throw DataError("SyntheticSpec: counts must be positive");
  if (latent_dim > dim) throw DataError("SyntheticSpec: latent_dim exceeds dim");
  if (bias_strength < 0.0 || noise_sigma < 0.0)
    throw DataError("SyntheticSpec: bias_strength and noise_sigma must be nonnegative");
}

FeatureSet generate_synthetic(const SyntheticSpec& spec, SyntheticTruth* truth) {
  spec.validate();
  Rng rng(spec.seed);

  // Orthonormal embedding of the latent space, fixed by the seed. Column
  // signs follow the QR factor's diagonal so the map is reproducible.
  Eigen::MatrixXd g(spec.dim, spec.latent_dim);
  for (Eigen::Index r = 0; r < g.rows(); ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd embed =
      qr.householderQ() * Eigen::MatrixXd::Identity(spec.dim, spec.latent_dim);
  const Eigen::MatrixXd r_factor =
      qr.matrixQR().topRows(spec.latent_dim).triangularView<Eigen::Upper>();
  for (int c = 0; c < spec.latent_dim; ++c)
    if (r_factor(c, c) < 0.0) embed.col(c) = -embed.col(c);

  // Per-view distortions: A^p = I + bias * R^p with unit-norm columns of R^p,
  // and a bias offset of magnitude bias_strength.
  std::vector<Eigen::MatrixXd> view_map;
  std::vector<Eigen::VectorXd> view_bias;
  for (int p = 0; p < spec.views; ++p) {
    Eigen::MatrixXd r(spec.dim, spec.dim);
    for (Eigen::Index cc = 0; cc < r.cols(); ++cc) {
      for (Eigen::Index rr = 0; rr < r.rows(); ++rr) r(rr, cc) = rng.uniform(-1.0, 1.0);
      const double norm = r.col(cc).norm();
      if (norm > 0.0) r.col(cc) /= norm;
    }
    view_map.push_back(Eigen::MatrixXd::Identity(spec.dim, spec.dim) + spec.bias_strength * r);

    Eigen::VectorXd b(spec.dim);
    for (Eigen::Index j = 0; j < b.size(); ++j) b[j] = rng.gaussian();
    const double norm = b.norm();
    if (norm > 0.0) b /= norm;
    view_bias.push_back(spec.bias_strength * b);
  }

  Eigen::MatrixXd latents(spec.latent_dim, spec.ids);
  for (Eigen::Index c = 0; c < latents.cols(); ++c)
    for (Eigen::Index r = 0; r < latents.rows(); ++r) latents(r, c) = rng.gaussian();

  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(spec.views) * spec.ids * spec.per_view_per_id);
  for (int p = 0; p < spec.views; ++p) {
    for (int id = 0; id < spec.ids; ++id) {
      const Eigen::VectorXd base =
          view_map[static_cast<std::size_t>(p)] * (embed * latents.col(id)) +
          view_bias[static_cast<std::size_t>(p)];
      for (int c = 0; c < spec.per_view_per_id; ++c) {
        Sample s;
        s.view = p + 1;
        s.identity = id;
        s.feature.resize(spec.dim);
        for (int j = 0; j < spec.dim; ++j) s.feature[j] = base[j] + spec.noise_sigma * rng.gaussian();
        samples.push_back(std::move(s));
      }
    }
  }

  if (truth) {
    truth->embed = std::move(embed);
    truth->view_map = std::move(view_map);
    truth->view_bias = std::move(view_bias);
    truth->latents = std::move(latents);
  }
  return FeatureSet(spec.views, samples);
}

}  // namespace camel
