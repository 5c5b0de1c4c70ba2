#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "snnrl/config.hpp"
#include "snnrl/stats.hpp"

namespace snnrl {

/// Per-seed outcome of one run: the latency (episode length in steps) and
/// return of every completed episode. A failed run keeps the episodes that
/// finished before the numerical error.
struct RunRecord {
  std::string config_id;
  std::uint64_t seed = 0;
  std::vector<int> latency;
  std::vector<double> episode_return;
  bool failed = false;
  std::string error;
};

std::unique_ptr<Agent> make_agent(const RunConfig& config, const EnvSpec& env, Rng& init_rng);

/// Runs one (config, seed) pair to completion. Deterministic: the seed
/// fixes the weight initialization, environment resets, and exploration.
RunRecord run_single(const RunConfig& config, std::uint64_t seed);

struct SingleOutcome {
  RunRecord record;
  std::unique_ptr<Agent> agent;  // final state, for snapshots
};
SingleOutcome run_single_with_agent(const RunConfig& config, std::uint64_t seed);

/// Called once per finished run (serialized) with the final agent state.
using RunObserver = std::function<void(const RunRecord&, const Agent&)>;

/// Independent runs over a seed list, optionally fanned out to a worker
/// pool. Results are ordered by the seed list regardless of scheduling;
/// numerical failures abort only the offending seed.
std::vector<RunRecord> run_campaign(const RunConfig& config, std::span<const std::uint64_t> seeds,
                                    int parallel = 1, const RunObserver& observer = {});

/// Windowed summary over the successful runs of a campaign.
SummaryStats summarize(std::span<const RunRecord> records, int window, bool higher_better);

// --- file emission --------------------------------------------------------

void emit_run_csv(const RunRecord& record, const std::filesystem::path& out_dir);
void emit_summary_csv(const SummaryStats& stats, const std::string& config_id,
                      const std::filesystem::path& out_dir);
void emit_layer_snapshot_csv(const ClusterLayer& layer, const std::filesystem::path& file);
void emit_value_table_csv(const ActorCritic& ac, const std::filesystem::path& file);
void emit_manifest(const RunConfig& config, std::span<const std::uint64_t> seeds,
                   const std::filesystem::path& file);

struct CampaignOutput {
  std::vector<RunRecord> records;
  SummaryStats stats;
};

/// Campaign + summary + full emission: per-run CSVs, summary CSV, manifest,
/// and (optionally) final layer snapshots per seed.
CampaignOutput run_and_emit(const RunConfig& config, std::span<const std::uint64_t> seeds,
                            const std::filesystem::path& out_dir, int parallel = 1,
                            bool snapshots = false);

/// Reads a per-run CSV back; used by the stats verb.
RunRecord read_run_csv(const std::filesystem::path& file);
std::vector<RunRecord> read_run_dir(const std::filesystem::path& result_dir);

// --- sweeps ----------------------------------------------------------------

struct SweepEntry {
  std::string id;
  RunConfig config;
  double objective = 0.0;  // windowed mean latency
  double stddev = 0.0;
};

/// Expands comma-separated value lists in a grid document into the
/// cartesian product of configs. Refuses grids larger than `cap` with the
/// offending count in the message.
std::vector<RunConfig> expand_grid(const ConfigDoc& grid, std::size_t cap);

/// Runs every grid combination on the given seeds and ranks the entries by
/// windowed objective, best first (direction per environment).
std::vector<SweepEntry> run_sweep(const ConfigDoc& grid, std::span<const std::uint64_t> seeds,
                                  std::size_t cap, int parallel = 1);

// --- ablations ---------------------------------------------------------------

/// Named ablation variants of a clustering config: "full",
/// "no_td_modulation", "no_unsupervised", "static_clusters".
RunConfig apply_variant(RunConfig config, const std::string& variant);
std::vector<std::string> ablation_variants();

// --- diagnostics -------------------------------------------------------------

struct MixtureClusteringResult {
  std::vector<double> weights;     // final 1-D weight per neuron
  std::vector<double> thresholds;  // final threshold per neuron
};

/// Streams `samples` mixture draws through a freshly initialized 1-D
/// clustering layer and returns its final state.
MixtureClusteringResult run_mixture_clustering(std::size_t neurons, std::size_t samples,
                                               double eta, double eta_th, double theta_open,
                                               const GaussianMixture& mixture,
                                               std::uint64_t seed);

struct TrackValueResult {
  std::vector<double> value_by_position;  // learned V over positions 1..100
  std::vector<double> neuron_positions;   // layer weights in track units
};

/// Trains the clustering network on the linear track and reads out the
/// learned piecewise value approximation. `modulation` toggles the
/// TD-modulated clustering ablation; everything else is held fixed.
TrackValueResult run_track_value_demo(bool modulation, std::uint64_t seed, int episodes = 500,
                                      std::size_t hidden_neurons = 10);

/// Closed-form discounted value of each track position.
std::vector<double> track_value_closed_form(double gamma);

/// "N" -> seeds 0..N-1; "3,7,21" -> that list.
std::vector<std::uint64_t> parse_seed_spec(const std::string& text);

}  // namespace snnrl
