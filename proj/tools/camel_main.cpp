#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "camel/dataio.hpp"
#include "camel/matcheval.hpp"
#include "camel/model.hpp"
#include "camel/solver.hpp"
#include "camel/synthetic.hpp"
#include "camel/types.hpp"

namespace {

using namespace camel;

// Output paths are probed before any heavy computation starts. The probe must
// not leave an empty file behind when a later stage fails, so a file the probe
// itself created is removed again.
void check_writable(const std::string& path) {
  const bool existed = static_cast<bool>(std::ifstream(path));
  std::ofstream probe(path, std::ios::app);
  if (!probe) throw DataError("cannot open '" + path + "' for writing");
  probe.close();
  if (!existed) std::remove(path.c_str());
}

struct FitArgs {
  std::string features;
  std::string out;
  std::string variant = "camel";
  CamelConfig cfg;
};

struct EvalArgs {
  std::string features;
  std::string model;
  std::string out;
  std::string variant = "camel";
  std::string protocol = "single";
  int shots = 0;  // 0 = protocol default (single: 1, multi: 3)
  int repetitions = 10;
  std::uint64_t seed = 0;
};

struct SynthArgs {
  std::string out;
  SyntheticSpec spec;
};

struct ReportArgs {
  std::string features;
  std::string out;
  CamelConfig cfg;
};

void add_config_options(CLI::App* cmd, CamelConfig* cfg) {
  cmd->add_option("--lambda", cfg->lambda, "cross-view consistency weight")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--k", cfg->num_clusters, "number of clusters")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()))
      ->capture_default_str();
  cmd->add_option("--dim", cfg->out_dim, "output dimension (0 = keep feature dimension)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--alpha", cfg->alpha,
                  "covariance ridge (negative = automatic, 1% of mean variance)")
      ->capture_default_str();
  cmd->add_option("--epsilon", cfg->epsilon, "convergence threshold on the objective decrement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iter", cfg->max_iter, "iteration cap")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()))
      ->capture_default_str();
  cmd->add_option("--seed", cfg->seed, "clustering initialization seed")->capture_default_str();
}

void write_fit_log(const std::string& path, const std::string& variant,
                   const ProjectionModel& model) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << "camel-fit-log 1\n";
  out << "variant " << variant << "\n";
  out << "seed " << model.config.seed << "\n";
  out << "iterations " << model.iterations << "\n";
  out << "converged " << (model.converged ? 1 : 0) << "\n";
  out << "final_objective " << format_double(model.final_objective) << "\n";
  out << "objective_history " << model.objective_history.size() << "\n";
  for (std::size_t i = 0; i < model.objective_history.size(); ++i)
    out << i << " " << format_double(model.objective_history[i]) << "\n";
  out << "end\n";
  if (!out) throw DataError("write to '" + path + "' failed");
}

int run_fit(const FitArgs& args) {
  check_writable(args.out);
  check_writable(args.out + ".log");
  const FeatureSet fs = load_features(args.features);

  ProjectionModel model;
  if (args.variant == "camel") {
    model = camel_fit(fs, args.cfg).first;
  } else if (args.variant == "cmel") {
    model = cmel_fit(fs, args.cfg);
  } else {
    model = camel_fit_supervised(fs, args.cfg);
  }

  save_model(model, args.out);
  write_fit_log(args.out + ".log", args.variant, model);
  std::cout << "wrote " << args.out << " (" << model.iterations << " iterations, "
            << (model.converged ? "converged" : "iteration cap reached")
            << ", objective " << format_double(model.final_objective) << ")\n";
  return 0;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

int run_eval(const EvalArgs& args) {
  check_writable(args.out);
  const FeatureSet fs = load_features(args.features);
  if (!fs.labeled()) throw DataError("eval requires identity labels in the feature file");

  ProjectionModel model;
  std::string model_name = args.model;
  if (args.variant == "euclidean" || args.model == "identity") {
    model = ProjectionModel::identity(fs.num_views(), fs.dim());
    model_name = "identity";
  } else {
    model = load_model(args.model);
  }

  const Protocol protocol = args.protocol == "single" ? Protocol::kSingle : Protocol::kMulti;
  const int shots = args.shots > 0 ? args.shots : (protocol == Protocol::kSingle ? 1 : 3);

  std::vector<double> rank1, map;
  std::vector<int> excluded_probes;
  std::vector<double> cmc_sum;
  std::size_t excluded_identities = 0;
  for (int rep = 0; rep < args.repetitions; ++rep) {
    const GalleryProbeSplit split =
        build_split(fs, protocol, shots, args.seed + static_cast<std::uint64_t>(rep));
    const RankingResult rr = rank_gallery(model, split, fs);
    if (cmc_sum.empty()) {
      cmc_sum.assign(rr.cmc.size(), 0.0);
      excluded_identities = split.excluded_identities.size();
    } else if (cmc_sum.size() != rr.cmc.size()) {
      throw DataError("eval: inconsistent gallery identity count across repetitions");
    }
    for (std::size_t k = 0; k < rr.cmc.size(); ++k) cmc_sum[k] += rr.cmc[k];
    rank1.push_back(rr.cmc.front());
    map.push_back(rr.map);
    excluded_probes.push_back(rr.excluded_probes);
  }

  std::ofstream out(args.out);
  if (!out) throw DataError("cannot open '" + args.out + "' for writing");
  out << "camel-eval-report 1\n";
  out << "model " << model_name << "\n";
  out << "protocol " << args.protocol << "\n";
  out << "shots " << shots << "\n";
  out << "repetitions " << args.repetitions << "\n";
  out << "seed " << args.seed << "\n";
  out << "gallery_identities " << cmc_sum.size() << "\n";
  out << "excluded_identities " << excluded_identities << "\n";
  out << "rank1_mean " << format_double(mean_of(rank1)) << "\n";
  out << "rank1_std " << format_double(std_of(rank1)) << "\n";
  out << "map_mean " << format_double(mean_of(map)) << "\n";
  out << "map_std " << format_double(std_of(map)) << "\n";
  for (int rep = 0; rep < args.repetitions; ++rep)
    out << "rep " << rep + 1 << " rank1 " << format_double(rank1[static_cast<std::size_t>(rep)])
        << " map " << format_double(map[static_cast<std::size_t>(rep)]) << " excluded_probes "
        << excluded_probes[static_cast<std::size_t>(rep)] << "\n";
  for (std::size_t k = 0; k < cmc_sum.size(); ++k)
    out << "cmc " << k + 1 << " " << format_double(cmc_sum[k] / args.repetitions) << "\n";
  out << "end\n";
  if (!out) throw DataError("write to '" + args.out + "' failed");

  std::cout << "wrote " << args.out << " (rank-1 " << format_double(mean_of(rank1)) << ", mAP "
            << format_double(mean_of(map)) << ")\n";
  return 0;
}

int run_synth(const SynthArgs& args) {
  check_writable(args.out);
  const FeatureSet fs = generate_synthetic(args.spec);
  save_features(fs, args.out);
  std::cout << "wrote " << args.out << " (" << fs.size() << " samples, " << fs.num_views()
            << " views, dim " << fs.dim() << ")\n";
  return 0;
}

int run_report(const ReportArgs& args) {
  check_writable(args.out);
  const FeatureSet fs = load_features(args.features);
  if (!fs.labeled()) throw DataError("report requires identity labels in the feature file");

  const SolverState state = camel_fit(fs, args.cfg).second;
  const PurityReport initial =
      cluster_purity_report(state.init_assignment, fs.identities(), state.num_clusters);
  const PurityReport converged =
      cluster_purity_report(state.final_assignment, fs.identities(), state.num_clusters);

  std::ofstream out(args.out);
  if (!out) throw DataError("cannot open '" + args.out + "' for writing");
  out << "camel-purity-report 1\n";
  out << "seed " << args.cfg.seed << "\n";
  out << "clusters " << state.num_clusters << "\n";
  out << "samples " << fs.size() << "\n";
  out << "stage rate_mixed mixed nonempty\n";
  out << "initial " << format_double(initial.rate_mixed) << " " << initial.mixed_clusters << " "
      << initial.nonempty_clusters << "\n";
  out << "converged " << format_double(converged.rate_mixed) << " " << converged.mixed_clusters
      << " " << converged.nonempty_clusters << "\n";
  out << "end\n";
  if (!out) throw DataError("write to '" + args.out + "' failed");

  std::cout << "wrote " << args.out << " (mixed-cluster rate " << format_double(initial.rate_mixed)
            << " -> " << format_double(converged.rate_mixed) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAMEL: clustering-based asymmetric metric learning for cross-view matching"};
  app.require_subcommand(1);

  FitArgs fit_args;
  CLI::App* fit = app.add_subcommand("fit", "learn per-view transforms from a feature file");
  fit->add_option("--features", fit_args.features, "training feature CSV")->required();
  fit->add_option("--out", fit_args.out, "model output path")->required();
  fit->add_option("--variant", fit_args.variant, "model variant")
      ->check(CLI::IsMember({"camel", "cmel", "supervised"}))
      ->capture_default_str();
  add_config_options(fit, &fit_args.cfg);

  EvalArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "rank galleries and report CMC/mAP");
  eval->add_option("--features", eval_args.features, "labeled feature CSV")->required();
  eval->add_option("--model", eval_args.model, "model file, or 'identity' for the raw baseline");
  eval->add_option("--out", eval_args.out, "report output path")->required();
  eval->add_option("--variant", eval_args.variant,
                   "set to 'euclidean' to evaluate the identity baseline without a model file")
      ->check(CLI::IsMember({"camel", "cmel", "supervised", "euclidean"}))
      ->capture_default_str();
  eval->add_option("--protocol", eval_args.protocol, "gallery protocol")
      ->check(CLI::IsMember({"single", "multi"}))
      ->capture_default_str();
  eval->add_option("--shots", eval_args.shots,
                   "gallery images per identity (0 = protocol default: single 1, multi 3)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  eval->add_option("--repetitions", eval_args.repetitions, "number of seeded splits to average")
      ->check(CLI::Range(1, std::numeric_limits<int>::max()))
      ->capture_default_str();
  eval->add_option("--seed", eval_args.seed, "base split seed (repetition r uses seed + r)")
      ->capture_default_str();

  SynthArgs synth_args;
  CLI::App* synth = app.add_subcommand("synth", "generate a labeled synthetic cross-view CSV");
  synth->add_option("--out", synth_args.out, "feature CSV output path")->required();
  synth->add_option("--views", synth_args.spec.views, "number of camera views")
      ->check(CLI::Range(2, std::numeric_limits<int>::max()))
      ->capture_default_str();
  synth->add_option("--ids", synth_args.spec.ids, "number of identities")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--per-view", synth_args.spec.per_view_per_id,
                    "images per identity per view")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--dim", synth_args.spec.dim, "feature dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--latent", synth_args.spec.latent_dim, "latent identity dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--bias", synth_args.spec.bias_strength, "view distortion magnitude")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--noise", synth_args.spec.noise_sigma, "per-image noise sigma")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--seed", synth_args.spec.seed, "generator seed")->capture_default_str();

  ReportArgs report_args;
  CLI::App* report = app.add_subcommand(
      "report", "fit on labeled data and report mixed-cluster rates (initial vs converged)");
  report->add_option("--features", report_args.features, "labeled feature CSV")->required();
  report->add_option("--out", report_args.out, "report output path")->required();
  add_config_options(report, &report_args.cfg);

  try {
    app.parse(argc, argv);
    if (fit->parsed()) return run_fit(fit_args);
    if (eval->parsed()) {
      if (eval_args.model.empty() && eval_args.variant != "euclidean") {
        std::cerr << "error: usage: eval needs --model <file|identity> or --variant euclidean\n";
        return 1;
      }
      return run_eval(eval_args);
    }
    if (synth->parsed()) return run_synth(synth_args);
    return run_report(report_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
