#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "snnrl/agent.hpp"
#include "snnrl/baselines.hpp"

namespace snnrl {

/// Sectioned key/value document: the on-disk format for run configs, sweep
/// grids, and manifests. Ordered, comment-aware ('#' and ';'), serializes
/// deterministically.
class ConfigDoc {
 public:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };

  static ConfigDoc parse(const std::string& text);
  static ConfigDoc parse_file(const std::filesystem::path& path);

  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  void set(const std::string& section, const std::string& key, const std::string& value);
  const std::string* find(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  const std::vector<Section>& sections() const { return sections_; }
  std::vector<Section>& sections() { return sections_; }

 private:
  Section& section(const std::string& name);
  std::vector<Section> sections_;
};

enum class AgentKind { Clustering, Tabular, Random };

/// Fully resolved experiment description: one environment, one learner,
/// episode budget, and summary window.
struct RunConfig {
  std::string id;
  std::string env;
  int episodes = 0;
  int window = 0;
  AgentKind agent = AgentKind::Clustering;
  AgentConfig clustering;
  TabularConfig tabular;
  std::vector<std::uint64_t> seeds;  // optional; carried by manifests
};

/// Parses and schema-checks a document. Violations report the full key
/// path. A manifest's [env.constants] section is verified against the
/// built-in physics constants.
RunConfig load_run_config(const ConfigDoc& doc);
RunConfig load_run_config_file(const std::filesystem::path& path);

/// Serializes a resolved config back into a document (without seeds or
/// physics constants; the manifest writer adds those).
ConfigDoc to_doc(const RunConfig& config);

/// Shipped configurations: letters a-d select the clustering network tuned
/// for mountain car, cart-pole, acrobot (two layers) and acrobot (single
/// layer); "tac-a".."tac-c" select the tabular baseline; "random-<env>"
/// selects the random agent.
RunConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

}  // namespace snnrl
