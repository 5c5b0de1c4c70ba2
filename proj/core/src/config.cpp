#include "snnrl/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "snnrl/csv.hpp"
#include "snnrl/environments.hpp"
#include "snnrl/errors.hpp"

namespace snnrl {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

}  // namespace

// ---------------------------------------------------------------------------
// ConfigDoc

ConfigDoc ConfigDoc::parse(const std::string& text) {
  ConfigDoc doc;
  std::istringstream in(text);
  std::string line;
  std::string current;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(line_no) + ": unterminated section header");
      }
      current = trim(line.substr(1, line.size() - 2));
      if (current.empty()) {
        throw ConfigError("config line " + std::to_string(line_no) + ": empty section name");
      }
      doc.section(current);
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    if (current.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": key outside any section");
    }
    doc.set(current, key, value);
  }
  return doc;
}

ConfigDoc ConfigDoc::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string ConfigDoc::serialize() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& sec : sections_) {
    if (!first) out << '\n';
    first = false;
    out << '[' << sec.name << "]\n";
    for (const auto& [key, value] : sec.entries) {
      out << key << " = " << value << '\n';
    }
  }
  return out.str();
}

void ConfigDoc::save(const std::filesystem::path& path) const {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << serialize();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

ConfigDoc::Section& ConfigDoc::section(const std::string& name) {
  for (auto& sec : sections_) {
    if (sec.name == name) return sec;
  }
  sections_.push_back(Section{name, {}});
  return sections_.back();
}

void ConfigDoc::set(const std::string& section_name, const std::string& key,
                    const std::string& value) {
  auto& sec = section(section_name);
  for (auto& [k, v] : sec.entries) {
    if (k == key) {
      v = value;
      return;
    }
  }
  sec.entries.emplace_back(key, value);
}

const std::string* ConfigDoc::find(const std::string& section_name, const std::string& key) const {
  for (const auto& sec : sections_) {
    if (sec.name != section_name) continue;
    for (const auto& [k, v] : sec.entries) {
      if (k == key) return &v;
    }
  }
  return nullptr;
}

bool ConfigDoc::has_section(const std::string& section_name) const {
  return std::any_of(sections_.begin(), sections_.end(),
                     [&](const Section& s) { return s.name == section_name; });
}

// ---------------------------------------------------------------------------
// Typed readers with key-path diagnostics

namespace {

class Reader {
 public:
  explicit Reader(const ConfigDoc& doc) : doc_(doc) {}

  bool has(const std::string& section, const std::string& key) const {
    return doc_.find(section, key) != nullptr;
  }

  std::string required(const std::string& section, const std::string& key) const {
    const auto* v = doc_.find(section, key);
    if (!v) throw ConfigError(section + "." + key + ": required key is missing");
    return *v;
  }

  std::string string_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    const auto* v = doc_.find(section, key);
    return v ? *v : fallback;
  }

  double number(const std::string& section, const std::string& key) const {
    return parse_double(section, key, required(section, key));
  }

  double number_or(const std::string& section, const std::string& key, double fallback) const {
    const auto* v = doc_.find(section, key);
    return v ? parse_double(section, key, *v) : fallback;
  }

  int integer(const std::string& section, const std::string& key) const {
    const double d = number(section, key);
    if (d != std::floor(d)) {
      throw ConfigError(section + "." + key + ": expected an integer, got '" +
                        required(section, key) + "'");
    }
    return static_cast<int>(d);
  }

  int integer_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
  }

  bool boolean_or(const std::string& section, const std::string& key, bool fallback) const {
    const auto* v = doc_.find(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError(section + "." + key + ": expected a boolean, got '" + *v + "'");
  }

  static double parse_double(const std::string& section, const std::string& key,
                             const std::string& text) {
    try {
      std::size_t used = 0;
      const double d = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(d)) throw std::invalid_argument(text);
      return d;
    } catch (const std::exception&) {
      throw ConfigError(section + "." + key + ": expected a number, got '" + text + "'");
    }
  }

 private:
  const ConfigDoc& doc_;
};

const std::set<std::string>& layer_keys() {
  static const std::set<std::string> keys = {
      "neurons",    "eta",        "eta_decay_factor",        "eta_decay_episodes",
      "eta_th",     "theta_open", "theta_open_decay_factor", "theta_open_decay_episodes",
      "eta_td",     "tau_trace",  "opening_scope"};
  return keys;
}

void check_keys(const ConfigDoc::Section& sec, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : sec.entries) {
    if (!allowed.count(key)) {
      throw ConfigError(sec.name + "." + key + ": unknown key");
    }
  }
}

void check_schema(const ConfigDoc& doc, AgentKind kind, const std::string& env) {
  static const std::set<std::string> known_sections = {
      "run",     "agent",    "clustering", "clustering.layer1", "clustering.layer2",
      "actor_critic", "ablation", "tabular", "seeds", "env.constants"};
  for (const auto& sec : doc.sections()) {
    if (!known_sections.count(sec.name)) {
      throw ConfigError("[" + sec.name + "]: unknown section");
    }
    if (sec.name == "run") {
      check_keys(sec, {"id", "env", "episodes", "window"});
    } else if (sec.name == "agent") {
      check_keys(sec, {"type"});
    } else if (sec.name == "clustering") {
      check_keys(sec, {"encoding"});
    } else if (sec.name == "clustering.layer1" || sec.name == "clustering.layer2") {
      check_keys(sec, layer_keys());
    } else if (sec.name == "actor_critic") {
      check_keys(sec, {"gamma", "actor_rate", "critic_rate", "tau_actor", "tau_critic",
                       "value_init", "epsilon_min", "epsilon_decay_episodes"});
    } else if (sec.name == "ablation") {
      check_keys(sec, {"disable_unsupervised", "disable_td_modulation", "static_clusters"});
    } else if (sec.name == "tabular") {
      check_keys(sec, {"bins"});
    } else if (sec.name == "seeds") {
      check_keys(sec, {"list"});
    } else if (sec.name == "env.constants") {
      const auto constants = physics_constants(env);
      for (const auto& [key, value] : sec.entries) {
        const auto it = constants.find(key);
        if (it == constants.end()) {
          throw ConfigError("env.constants." + key + ": unknown constant for '" + env + "'");
        }
        const double given = Reader::parse_double("env.constants", key, value);
        const double tol = 1e-8 * std::max(1.0, std::abs(it->second));
        if (std::abs(given - it->second) > tol) {
          throw ConfigError("env.constants." + key + ": value " + value +
                            " does not match the built-in dynamics (" +
                            format_number(it->second) + ")");
        }
      }
    }
  }
  if (kind != AgentKind::Tabular && doc.has_section("tabular")) {
    throw ConfigError("[tabular]: only valid with agent type 'tabular'");
  }
  if (kind != AgentKind::Clustering) {
    for (const char* name : {"clustering", "clustering.layer1", "clustering.layer2", "ablation"}) {
      if (doc.has_section(name)) {
        throw ConfigError("[" + std::string(name) + "]: only valid with agent type 'clustering'");
      }
    }
  }
  if (kind != AgentKind::Tabular && kind != AgentKind::Clustering &&
      doc.has_section("actor_critic")) {
    throw ConfigError("[actor_critic]: not valid for the random agent");
  }
}

DecaySchedule read_schedule(const Reader& r, const std::string& section, const std::string& prefix,
                            const std::string& rate_key) {
  DecaySchedule s;
  s.initial = r.number(section, rate_key);
  s.factor = r.number_or(section, prefix + "_decay_factor", 1.0);
  s.decay_episodes = r.integer_or(section, prefix + "_decay_episodes", 1);
  if (s.initial <= 0.0) throw ConfigError(section + "." + rate_key + ": must be > 0");
  if (s.factor <= 0.0 || s.factor > 1.0) {
    throw ConfigError(section + "." + prefix + "_decay_factor: must be in (0, 1]");
  }
  if (s.decay_episodes < 1) {
    throw ConfigError(section + "." + prefix + "_decay_episodes: must be >= 1");
  }
  return s;
}

LayerConfig read_layer(const Reader& r, const std::string& section) {
  LayerConfig layer;
  const int neurons = r.integer(section, "neurons");
  if (neurons < 1) throw ConfigError(section + ".neurons: must be >= 1");
  layer.neurons = static_cast<std::size_t>(neurons);
  layer.params.eta = read_schedule(r, section, "eta", "eta");
  layer.params.theta_open = read_schedule(r, section, "theta_open", "theta_open");
  layer.params.eta_th = r.number(section, "eta_th");
  if (layer.params.eta_th <= 0.0) throw ConfigError(section + ".eta_th: must be > 0");
  layer.params.eta_td = r.number(section, "eta_td");
  if (layer.params.eta_td < 0.0) throw ConfigError(section + ".eta_td: must be >= 0");
  layer.params.tau_trace = r.number(section, "tau_trace");
  if (layer.params.tau_trace <= 1.0) {
    throw ConfigError(section + ".tau_trace: must be > 1 (a value <= 1 would zero or overshoot traces)");
  }
  const std::string scope = r.string_or(section, "opening_scope", "group");
  if (scope == "group") {
    layer.params.opening_scope = OpeningScope::Group;
  } else if (scope == "layer") {
    layer.params.opening_scope = OpeningScope::Layer;
  } else {
    throw ConfigError(section + ".opening_scope: expected 'group' or 'layer', got '" + scope + "'");
  }
  return layer;
}

AcConfig read_ac(const Reader& r) {
  AcConfig ac;
  ac.gamma = r.number("actor_critic", "gamma");
  if (ac.gamma <= 0.0 || ac.gamma > 1.0) throw ConfigError("actor_critic.gamma: must be in (0, 1]");
  ac.eta_a = r.number("actor_critic", "actor_rate");
  ac.eta_c = r.number("actor_critic", "critic_rate");
  if (ac.eta_a <= 0.0 || ac.eta_c <= 0.0) {
    throw ConfigError("actor_critic.actor_rate/critic_rate: must be > 0");
  }
  ac.tau_a = r.number("actor_critic", "tau_actor");
  ac.tau_c = r.number("actor_critic", "tau_critic");
  if (ac.tau_a < 1.0 || ac.tau_c < 1.0) {
    throw ConfigError("actor_critic.tau_actor/tau_critic: must be >= 1");
  }
  ac.value_init = r.number_or("actor_critic", "value_init", 0.0);
  if (!std::isfinite(ac.value_init)) throw ConfigError("actor_critic.value_init: must be finite");
  ac.epsilon.epsilon_min = r.number("actor_critic", "epsilon_min");
  if (ac.epsilon.epsilon_min < 0.0 || ac.epsilon.epsilon_min >= 1.0) {
    throw ConfigError("actor_critic.epsilon_min: must be in [0, 1)");
  }
  ac.epsilon.decay_episodes = r.integer("actor_critic", "epsilon_decay_episodes");
  if (ac.epsilon.decay_episodes < 1) {
    throw ConfigError("actor_critic.epsilon_decay_episodes: must be >= 1");
  }
  return ac;
}

std::vector<std::uint64_t> read_seeds(const Reader& r) {
  std::vector<std::uint64_t> seeds;
  if (!r.has("seeds", "list")) return seeds;
  const std::string text = r.required("seeds", "list");
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    try {
      seeds.push_back(std::stoull(token));
    } catch (const std::exception&) {
      throw ConfigError("seeds.list: expected an unsigned integer, got '" + token + "'");
    }
  }
  return seeds;
}

int default_episodes(const std::string& env) {
  if (env == "mountain_car") return 1000;
  if (env == "linear_track") return 500;
  return 3000;
}

}  // namespace

RunConfig load_run_config(const ConfigDoc& doc) {
  Reader r(doc);
  RunConfig cfg;
  cfg.env = r.required("run", "env");
  make_environment(cfg.env);  // validates the name
  const std::string type = r.string_or("agent", "type", "clustering");
  if (type == "clustering") {
    cfg.agent = AgentKind::Clustering;
  } else if (type == "tabular") {
    cfg.agent = AgentKind::Tabular;
  } else if (type == "random") {
    cfg.agent = AgentKind::Random;
  } else {
    throw ConfigError("agent.type: expected clustering|tabular|random, got '" + type + "'");
  }
  check_schema(doc, cfg.agent, cfg.env);

  cfg.id = r.string_or("run", "id", type + "-" + cfg.env);
  cfg.episodes = r.integer_or("run", "episodes", default_episodes(cfg.env));
  if (cfg.episodes < 1) throw ConfigError("run.episodes: must be >= 1");
  cfg.window = r.integer_or("run", "window", std::min(1000, cfg.episodes));
  if (cfg.window < 1 || cfg.window > cfg.episodes) {
    throw ConfigError("run.window: must be in [1, episodes]");
  }

  if (cfg.agent == AgentKind::Clustering) {
    const std::string encoding = r.string_or("clustering", "encoding", "fully_connected");
    if (encoding == "fully_connected") {
      cfg.clustering.encoding = Encoding::FullyConnected;
    } else if (encoding == "per_dimension") {
      cfg.clustering.encoding = Encoding::PerDimensionGroups;
    } else {
      throw ConfigError("clustering.encoding: expected fully_connected|per_dimension, got '" +
                        encoding + "'");
    }
    cfg.clustering.layer1 = read_layer(r, "clustering.layer1");
    if (doc.has_section("clustering.layer2")) {
      cfg.clustering.layer2 = read_layer(r, "clustering.layer2");
    }
    if (cfg.clustering.encoding == Encoding::PerDimensionGroups && !cfg.clustering.layer2) {
      throw ConfigError("clustering.layer2: required for the per_dimension encoding");
    }
    cfg.clustering.ac = read_ac(r);
    cfg.clustering.ablation.disable_unsupervised =
        r.boolean_or("ablation", "disable_unsupervised", false);
    cfg.clustering.ablation.disable_td_modulation =
        r.boolean_or("ablation", "disable_td_modulation", false);
    cfg.clustering.ablation.static_clusters = r.boolean_or("ablation", "static_clusters", false);
    if (cfg.clustering.ablation.static_clusters) {
      cfg.clustering.ablation.disable_unsupervised = true;
      cfg.clustering.ablation.disable_td_modulation = true;
    }
  } else if (cfg.agent == AgentKind::Tabular) {
    const int bins = r.integer("tabular", "bins");
    if (bins < 1) throw ConfigError("tabular.bins: must be >= 1");
    cfg.tabular.bins = static_cast<std::size_t>(bins);
    cfg.tabular.ac = read_ac(r);
  }

  cfg.seeds = read_seeds(r);
  return cfg;
}

RunConfig load_run_config_file(const std::filesystem::path& path) {
  return load_run_config(ConfigDoc::parse_file(path));
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

void write_schedule(ConfigDoc& doc, const std::string& section, const std::string& prefix,
                    const std::string& rate_key, const DecaySchedule& s) {
  doc.set(section, rate_key, format_number(s.initial));
  doc.set(section, prefix + "_decay_factor", format_number(s.factor));
  doc.set(section, prefix + "_decay_episodes", format_number(s.decay_episodes));
}

void write_layer(ConfigDoc& doc, const std::string& section, const LayerConfig& layer) {
  doc.set(section, "neurons", format_number(layer.neurons));
  write_schedule(doc, section, "eta", "eta", layer.params.eta);
  doc.set(section, "eta_th", format_number(layer.params.eta_th));
  write_schedule(doc, section, "theta_open", "theta_open", layer.params.theta_open);
  doc.set(section, "eta_td", format_number(layer.params.eta_td));
  doc.set(section, "tau_trace", format_number(layer.params.tau_trace));
  doc.set(section, "opening_scope",
          layer.params.opening_scope == OpeningScope::Group ? "group" : "layer");
}

void write_ac(ConfigDoc& doc, const AcConfig& ac) {
  doc.set("actor_critic", "gamma", format_number(ac.gamma));
  doc.set("actor_critic", "actor_rate", format_number(ac.eta_a));
  doc.set("actor_critic", "critic_rate", format_number(ac.eta_c));
  doc.set("actor_critic", "value_init", format_number(ac.value_init));
  doc.set("actor_critic", "tau_actor", format_number(ac.tau_a));
  doc.set("actor_critic", "tau_critic", format_number(ac.tau_c));
  doc.set("actor_critic", "epsilon_min", format_number(ac.epsilon.epsilon_min));
  doc.set("actor_critic", "epsilon_decay_episodes", format_number(ac.epsilon.decay_episodes));
}

}  // namespace

ConfigDoc to_doc(const RunConfig& cfg) {
  ConfigDoc doc;
  doc.set("run", "id", cfg.id);
  doc.set("run", "env", cfg.env);
  doc.set("run", "episodes", format_number(cfg.episodes));
  doc.set("run", "window", format_number(cfg.window));
  switch (cfg.agent) {
    case AgentKind::Clustering: {
      doc.set("agent", "type", "clustering");
      doc.set("clustering", "encoding",
              cfg.clustering.encoding == Encoding::FullyConnected ? "fully_connected"
                                                                  : "per_dimension");
      write_layer(doc, "clustering.layer1", cfg.clustering.layer1);
      if (cfg.clustering.layer2) write_layer(doc, "clustering.layer2", *cfg.clustering.layer2);
      write_ac(doc, cfg.clustering.ac);
      doc.set("ablation", "disable_unsupervised",
              cfg.clustering.ablation.disable_unsupervised ? "true" : "false");
      doc.set("ablation", "disable_td_modulation",
              cfg.clustering.ablation.disable_td_modulation ? "true" : "false");
      doc.set("ablation", "static_clusters",
              cfg.clustering.ablation.static_clusters ? "true" : "false");
      break;
    }
    case AgentKind::Tabular:
      doc.set("agent", "type", "tabular");
      doc.set("tabular", "bins", format_number(cfg.tabular.bins));
      write_ac(doc, cfg.tabular.ac);
      break;
    case AgentKind::Random:
      doc.set("agent", "type", "random");
      break;
  }
  return doc;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

LayerConfig make_layer(std::size_t neurons, double eta, double eta_factor, int eta_episodes,
                       double eta_th, double theta_open, double theta_factor, int theta_episodes,
                       double eta_td, double tau_trace) {
  LayerConfig layer;
  layer.neurons = neurons;
  layer.params.eta = {eta, eta_factor, eta_episodes};
  layer.params.eta_th = eta_th;
  layer.params.theta_open = {theta_open, theta_factor, theta_episodes};
  layer.params.eta_td = eta_td;
  layer.params.tau_trace = tau_trace;
  return layer;
}

AcConfig make_ac(double gamma, double eta_a, double eta_c, double tau_a, double tau_c,
                 double epsilon_min, int epsilon_decay, double value_init = 0.0) {
  AcConfig ac;
  ac.gamma = gamma;
  ac.eta_a = eta_a;
  ac.eta_c = eta_c;
  ac.tau_a = tau_a;
  ac.tau_c = tau_c;
  ac.value_init = value_init;
  ac.epsilon.epsilon_min = epsilon_min;
  ac.epsilon.decay_episodes = epsilon_decay;
  return ac;
}

RunConfig tac_preset(const std::string& name) {
  RunConfig cfg;
  cfg.agent = AgentKind::Tabular;
  cfg.id = name;
  if (name == "tac-a") {
    cfg.env = "mountain_car";
    cfg.episodes = 1000;
    cfg.window = 500;
    cfg.tabular.bins = 20;
    cfg.tabular.ac = make_ac(0.95, 1e-1, 1e-1, 1.0, 20.0, 0.01, 500);
  } else if (name == "tac-b") {
    cfg.env = "cartpole";
    cfg.episodes = 3000;
    cfg.window = 1000;
    cfg.tabular.bins = 10;
    cfg.tabular.ac = make_ac(0.95, 1e-2, 1e-2, 1.0, 20.0, 0.05, 200);
  } else if (name == "tac-c") {
    cfg.env = "acrobot";
    cfg.episodes = 3000;
    cfg.window = 1000;
    cfg.tabular.bins = 10;
    cfg.tabular.ac = make_ac(0.9, 1e-2, 1e-2, 1.0, 20.0, 0.05, 200);
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return cfg;
}

}  // namespace

RunConfig preset_config(const std::string& name) {
  RunConfig cfg;
  cfg.id = "preset-" + name;
  cfg.agent = AgentKind::Clustering;
  if (name == "a") {
    cfg.env = "mountain_car";
    cfg.episodes = 1000;
    cfg.window = 500;
    cfg.clustering.encoding = Encoding::FullyConnected;
    cfg.clustering.layer1 =
        make_layer(100, 1e-5, 1e-1, 1000, 1e-5, 1e-2, 1e-1, 1000, 1e-3, 5.0);
    cfg.clustering.ac = make_ac(0.99, 1e-1, 1e-1, 5.0, 5.0, 0.01, 500);
  } else if (name == "b") {
    cfg.env = "cartpole";
    cfg.episodes = 3000;
    cfg.window = 1000;
    cfg.clustering.encoding = Encoding::FullyConnected;
    cfg.clustering.layer1 =
        make_layer(100, 1e-3, 1e-3, 100, 1e-2, 1e-3, 1e-3, 100, 1e-1, 10.0);
    cfg.clustering.ac = make_ac(0.95, 1e-1, 1e-1, 50.0, 10.0, 0.01, 500, 20.0);
  } else if (name == "c") {
    cfg.env = "acrobot";
    cfg.episodes = 3000;
    cfg.window = 1000;
    cfg.clustering.encoding = Encoding::PerDimensionGroups;
    cfg.clustering.layer1 =
        make_layer(20, 1e-3, 1e-1, 500, 1e-5, 1e-2, 1e-1, 1000, 1e-2, 10.0);
    cfg.clustering.layer2 =
        make_layer(20, 1e-3, 1e-1, 500, 1e-3, 1e-1, 1e-1, 1000, 1e-2, 10.0);
    cfg.clustering.ac = make_ac(0.95, 1e-1, 1e-2, 10.0, 10.0, 0.01, 500);
  } else if (name == "d") {
    cfg.env = "acrobot";
    cfg.episodes = 3000;
    cfg.window = 1000;
    cfg.clustering.encoding = Encoding::FullyConnected;
    cfg.clustering.layer1 =
        make_layer(100, 1e-3, 1e-2, 100, 1e-2, 1e-1, 1e-1, 100, 1e-2, 10.0);
    cfg.clustering.ac = make_ac(0.99, 1e-1, 1e-1, 10.0, 10.0, 0.01, 500);
  } else if (name.rfind("tac-", 0) == 0) {
    return tac_preset(name);
  } else if (name.rfind("random-", 0) == 0) {
    const std::string env = name.substr(7);
    make_environment(env);  // validates
    cfg.agent = AgentKind::Random;
    cfg.id = name;
    cfg.env = env;
    cfg.episodes = default_episodes(env);
    cfg.window = std::min(1000, cfg.episodes);
    if (env == "mountain_car") cfg.window = 500;
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"a",     "b",     "c",     "d",
          "tac-a", "tac-b", "tac-c",
          "random-mountain_car", "random-cartpole", "random-acrobot"};
}

}  // namespace snnrl
