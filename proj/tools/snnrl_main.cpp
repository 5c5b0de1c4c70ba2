// Command-line experiment runner: multi-seed campaigns, hyperparameter
// sweeps, ablations, significance tests, and the clustering / value-curve
// diagnostics.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "snnrl/csv.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/errors.hpp"
#include "snnrl/harness.hpp"
#include "snnrl/stats.hpp"

namespace fs = std::filesystem;
using namespace snnrl;

namespace {

struct CommonOpts {
  std::string preset;
  std::string config_file;
  std::string seeds = "10";
  int episodes = 0;  // 0 = keep config value
  int window = 0;
  std::string out = "results";
  int parallel = 1;
};

RunConfig resolve_config(const CommonOpts& opts) {
  RunConfig cfg;
  if (!opts.preset.empty() && !opts.config_file.empty()) {
    throw ConfigError("--preset and --config are mutually exclusive");
  }
  if (!opts.preset.empty()) {
    cfg = preset_config(opts.preset);
  } else if (!opts.config_file.empty()) {
    cfg = load_run_config_file(opts.config_file);
  } else {
    throw ConfigError("one of --preset or --config is required");
  }
  if (opts.episodes > 0) {
    cfg.episodes = opts.episodes;
    cfg.window = std::min(cfg.window, cfg.episodes);
  }
  if (opts.window > 0) {
    if (opts.window > cfg.episodes) throw ConfigError("--window exceeds the episode count");
    cfg.window = opts.window;
  }
  return cfg;
}

std::vector<std::uint64_t> resolve_seeds(const CommonOpts& opts, const RunConfig& cfg) {
  // An explicit --seeds wins; otherwise a manifest's recorded seed list.
  if (!opts.seeds.empty()) return parse_seed_spec(opts.seeds);
  if (!cfg.seeds.empty()) return cfg.seeds;
  return parse_seed_spec("10");
}

int report_failures(const std::vector<RunRecord>& records) {
  int failures = 0;
  for (const auto& r : records) {
    if (r.failed) {
      ++failures;
      std::cerr << "run failed: " << r.error << "\n";
    }
  }
  return failures;
}

void print_summary(const RunConfig& cfg, const SummaryStats& stats,
                   const std::vector<RunRecord>& records) {
  std::printf("%s: %zu runs x %d episodes, window %d (%s latency is better)\n", cfg.id.c_str(),
              records.size(), cfg.episodes, stats.window,
              stats.higher_better ? "higher" : "lower");
  std::printf("  windowed latency mean %.9g, std %.9g, n %zu\n", stats.mean, stats.stddev,
              stats.n);
  std::printf("  best run: seed %llu (windowed mean %.9g)\n",
              static_cast<unsigned long long>(records[stats.best_run].seed),
              stats.higher_better
                  ? *std::max_element(stats.run_window_means.begin(), stats.run_window_means.end())
                  : *std::min_element(stats.run_window_means.begin(),
                                      stats.run_window_means.end()));
}

int cmd_run(const CommonOpts& opts, bool snapshots) {
  RunConfig cfg = resolve_config(opts);
  const auto seeds = resolve_seeds(opts, cfg);
  const auto out_dir = fs::path(opts.out);
  auto output = run_and_emit(cfg, seeds, out_dir, opts.parallel, snapshots);
  const int failures = report_failures(output.records);
  print_summary(cfg, output.stats, output.records);
  std::printf("  results under %s\n", out_dir.string().c_str());
  return failures == 0 ? 0 : 3;
}

int cmd_sweep(const CommonOpts& opts, std::size_t cap) {
  if (opts.config_file.empty()) throw ConfigError("sweep requires --config with a grid file");
  const auto grid = ConfigDoc::parse_file(opts.config_file);
  const auto seeds = parse_seed_spec(opts.seeds);
  const auto entries = run_sweep(grid, seeds, cap, opts.parallel);
  std::printf("%zu configurations, ranked best first:\n", entries.size());
  for (std::size_t rank = 0; rank < entries.size(); ++rank) {
    std::printf("  %2zu. %-60s objective %.9g (std %.9g)\n", rank + 1, entries[rank].id.c_str(),
                entries[rank].objective, entries[rank].stddev);
  }
  if (!opts.out.empty()) {
    CsvFile csv(fs::path(opts.out) / "sweep_results.csv");
    csv.write_row({"rank", "config", "objective", "std"});
    for (std::size_t rank = 0; rank < entries.size(); ++rank) {
      csv.write_row({format_number(rank + 1), entries[rank].id,
                     format_number(entries[rank].objective),
                     format_number(entries[rank].stddev)});
    }
    std::printf("  wrote %s\n", (fs::path(opts.out) / "sweep_results.csv").string().c_str());
  }
  return 0;
}

int cmd_ablate(const CommonOpts& opts, const std::string& variants_arg) {
  RunConfig base = resolve_config(opts);
  const auto seeds = resolve_seeds(opts, base);
  std::vector<std::string> variants;
  {
    std::string token;
    std::istringstream in(variants_arg);
    while (std::getline(in, token, ',')) {
      if (!token.empty()) variants.push_back(token);
    }
  }
  if (variants.empty()) variants = ablation_variants();

  struct VariantResult {
    std::string name;
    SummaryStats stats;
  };
  std::vector<VariantResult> results;
  int failures = 0;
  for (const auto& variant : variants) {
    RunConfig cfg = apply_variant(base, variant);
    const auto out_dir = fs::path(opts.out) / variant;
    auto output = run_and_emit(cfg, seeds, out_dir, opts.parallel, false);
    failures += report_failures(output.records);
    std::printf("%-18s windowed mean %.9g (std %.9g)\n", variant.c_str(), output.stats.mean,
                output.stats.stddev);
    results.push_back({variant, std::move(output.stats)});
  }
  const auto full = std::find_if(results.begin(), results.end(),
                                 [](const VariantResult& r) { return r.name == "full"; });
  if (full != results.end()) {
    std::printf("significance vs full (Welch, two-sided, alpha 0.05):\n");
    for (const auto& r : results) {
      if (r.name == "full") continue;
      const auto test = welch_t_test(full->stats.run_window_means, r.stats.run_window_means);
      std::printf("  %-18s t %.4g, dof %.4g, p %.4g -> %s\n", r.name.c_str(), test.t, test.dof,
                  test.p_value, test.significant ? "significant" : "not significant");
    }
  }
  return failures == 0 ? 0 : 3;
}

int cmd_stats(const std::string& dir_a, const std::string& dir_b, int window, double alpha) {
  auto load = [&](const fs::path& dir) {
    std::vector<RunRecord> records = read_run_dir(dir);
    fs::path manifest;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const auto name = entry.path().filename().string();
      if (name.rfind("manifest_", 0) == 0 && entry.path().extension() == ".ini") {
        manifest = entry.path();
        break;
      }
    }
    if (manifest.empty()) throw IoError("no manifest under '" + dir.string() + "'");
    RunConfig cfg = load_run_config_file(manifest);
    return std::make_pair(std::move(records), std::move(cfg));
  };
  auto [records_a, cfg_a] = load(dir_a);
  auto [records_b, cfg_b] = load(dir_b);
  const int w = window > 0 ? window : cfg_a.window;
  const bool higher_better = make_environment(cfg_a.env)->spec().higher_latency_better;
  const auto stats_a = summarize(records_a, w, higher_better);
  const auto stats_b = summarize(records_b, w, higher_better);
  const auto test = welch_t_test(stats_a.run_window_means, stats_b.run_window_means, alpha);
  std::printf("A: %s  mean %.9g (std %.9g, n %zu)\n", cfg_a.id.c_str(), stats_a.mean,
              stats_a.stddev, stats_a.n);
  std::printf("B: %s  mean %.9g (std %.9g, n %zu)\n", cfg_b.id.c_str(), stats_b.mean,
              stats_b.stddev, stats_b.n);
  std::printf("Welch t %.6g, dof %.6g, p %.6g -> %s%s\n", test.t, test.dof, test.p_value,
              test.significant ? "significant" : "not significant",
              test.degenerate ? " (degenerate: zero variance)" : "");
  return 0;
}

int cmd_demo_clustering(const CommonOpts& opts, std::size_t samples, double eta, double eta_th,
                        double theta_open) {
  const auto seeds = parse_seed_spec(opts.seeds);
  const GaussianMixture mixture;
  const auto out_dir = fs::path(opts.out);
  for (const std::size_t neurons : {std::size_t{3}, std::size_t{10}}) {
    double threshold_sum = 0.0;
    for (const auto seed : seeds) {
      const auto result =
          run_mixture_clustering(neurons, samples, eta, eta_th, theta_open, mixture, seed);
      CsvFile csv(out_dir / ("mixture_" + std::to_string(neurons) + "neurons_seed" +
                             std::to_string(seed) + ".csv"));
      csv.write_row({"neuron", "weight", "threshold"});
      for (std::size_t i = 0; i < result.weights.size(); ++i) {
        csv.write_row({format_number(i), format_number(result.weights[i]),
                       format_number(result.thresholds[i])});
      }
      for (const double t : result.thresholds) threshold_sum += t;
    }
    std::printf("%zu neurons: mean final threshold %.9g over %zu seeds\n", neurons,
                threshold_sum / static_cast<double>(neurons * seeds.size()), seeds.size());
  }
  std::printf("  snapshots under %s\n", out_dir.string().c_str());
  return 0;
}

int cmd_demo_track(const CommonOpts& opts, int episodes, std::size_t neurons) {
  const auto seeds = parse_seed_spec(opts.seeds);
  const auto out_dir = fs::path(opts.out);
  const auto oracle = track_value_closed_form(0.9);
  double rms_with = 0.0;
  double rms_without = 0.0;
  for (const auto seed : seeds) {
    const auto with = run_track_value_demo(true, seed, episodes, neurons);
    const auto without = run_track_value_demo(false, seed, episodes, neurons);
    CsvFile csv(out_dir / ("track_values_seed" + std::to_string(seed) + ".csv"));
    csv.write_row({"position", "oracle", "with_modulation", "without_modulation"});
    double sq_with = 0.0;
    double sq_without = 0.0;
    for (int p = 1; p <= 100; ++p) {
      csv.write_row({format_number(p), format_number(oracle[p - 1]),
                     format_number(with.value_by_position[p - 1]),
                     format_number(without.value_by_position[p - 1])});
      sq_with += (with.value_by_position[p - 1] - oracle[p - 1]) *
                 (with.value_by_position[p - 1] - oracle[p - 1]);
      sq_without += (without.value_by_position[p - 1] - oracle[p - 1]) *
                    (without.value_by_position[p - 1] - oracle[p - 1]);
    }
    rms_with += std::sqrt(sq_with / 100.0);
    rms_without += std::sqrt(sq_without / 100.0);
  }
  std::printf("value RMS vs oracle, mean over %zu seeds:\n", seeds.size());
  std::printf("  with TD modulation:    %.9g\n", rms_with / static_cast<double>(seeds.size()));
  std::printf("  without TD modulation: %.9g\n", rms_without / static_cast<double>(seeds.size()));
  std::printf("  value tables under %s\n", out_dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-driven clustering + actor-critic experiment runner"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool snapshots = false;
  std::size_t cap = 100;
  std::string variants;
  std::string dir_a, dir_b;
  int stats_window = 0;
  double alpha = 0.05;
  std::size_t samples = 10000;
  double eta = 1e-2, eta_th = 1e-2, theta_open = 8e-4;
  int demo_episodes = 500;
  std::size_t demo_neurons = 10;

  auto add_common = [&](CLI::App* cmd, bool with_config = true) {
    if (with_config) {
      cmd->add_option("--preset", opts.preset,
                      "Shipped configuration (a, b, c, d, tac-a..c, random-<env>)");
      cmd->add_option("--config", opts.config_file, "Config or manifest file");
      cmd->add_option("--episodes", opts.episodes, "Override the episode count");
      cmd->add_option("--window", opts.window, "Override the summary window");
    }
    cmd->add_option("--seeds", opts.seeds, "Seed count N (0..N-1) or comma list");
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_option("--parallel", opts.parallel, "Worker threads across seeds");
  };

  auto* run = app.add_subcommand("run", "Multi-seed campaign for one configuration");
  add_common(run);
  run->add_flag("--snapshots", snapshots, "Write final layer snapshots per seed");

  auto* sweep = app.add_subcommand("sweep", "Deterministic grid sweep over a config with value lists");
  add_common(sweep);
  sweep->add_option("--cap", cap, "Maximum number of grid combinations");

  auto* ablate = app.add_subcommand("ablate", "Run ablation variants of a clustering preset");
  add_common(ablate);
  ablate->add_option("--variants", variants,
                     "Comma list of full,no_td_modulation,no_unsupervised,static_clusters");

  auto* stats = app.add_subcommand("stats", "Welch t-test between two result directories");
  stats->add_option("dir_a", dir_a, "First result directory")->required();
  stats->add_option("dir_b", dir_b, "Second result directory")->required();
  stats->add_option("--window", stats_window, "Summary window (default: manifest value)");
  stats->add_option("--alpha", alpha, "Significance level");

  auto* demo_clustering =
      app.add_subcommand("demo-clustering", "Mixture-stream clustering diagnostic (3 and 10 neurons)");
  add_common(demo_clustering, false);
  demo_clustering->add_option("--samples", samples, "Stream length");
  demo_clustering->add_option("--eta", eta, "Weight update rate");
  demo_clustering->add_option("--eta-th", eta_th, "Threshold update rate");
  demo_clustering->add_option("--theta-open", theta_open, "Threshold opening increment");

  auto* demo_track =
      app.add_subcommand("demo-track", "Linear-track value approximation with/without TD modulation");
  add_common(demo_track, false);
  demo_track->add_option("--episodes", demo_episodes, "Training episodes per arm");
  demo_track->add_option("--neurons", demo_neurons, "Hidden neuron count");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opts, snapshots);
    if (sweep->parsed()) return cmd_sweep(opts, cap);
    if (ablate->parsed()) return cmd_ablate(opts, variants);
    if (stats->parsed()) return cmd_stats(dir_a, dir_b, stats_window, alpha);
    if (demo_clustering->parsed()) return cmd_demo_clustering(opts, samples, eta, eta_th, theta_open);
    if (demo_track->parsed()) return cmd_demo_track(opts, demo_episodes, demo_neurons);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
