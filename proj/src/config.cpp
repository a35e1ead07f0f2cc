#include "d2dsim/config.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <fstream>
#include <functional>
#include <sstream>

namespace d2d {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
  }
  if (used != value.size()) {
    throw ConfigError("config key '" + key + "': trailing characters in '" + value + "'");
  }
  return out;
}

long long parse_integer(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + key + "': not an integer: '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config key '" + key + "': not a boolean: '" + value + "'");
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

struct Field {
  const char* key;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define D2D_DOUBLE_FIELD(name)                                                         \
  Field {                                                                              \
    #name, [](ScenarioConfig& c, const std::string& v) { c.name = parse_double(#name, v); }, \
        [](const ScenarioConfig& c) { return format_double(c.name); }                  \
  }
#define D2D_INT_FIELD(name)                                                                 \
  Field {                                                                                   \
    #name,                                                                                  \
        [](ScenarioConfig& c, const std::string& v) {                                       \
          c.name = static_cast<decltype(c.name)>(parse_integer(#name, v));                  \
        },                                                                                  \
        [](const ScenarioConfig& c) { return std::to_string(c.name); }                      \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      D2D_DOUBLE_FIELD(cell_radius),
      D2D_INT_FIELD(num_cus),
      D2D_INT_FIELD(num_mgs),
      Field{"receivers_per_mg",
            [](ScenarioConfig& c, const std::string& v) {
              c.receivers_per_mg.clear();
              std::stringstream ss(v);
              std::string item;
              while (std::getline(ss, item, ',')) {
                c.receivers_per_mg.push_back(
                    static_cast<int>(parse_integer("receivers_per_mg", trim(item))));
              }
            },
            [](const ScenarioConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.receivers_per_mg.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(c.receivers_per_mg[i]);
              }
              return out;
            }},
      D2D_DOUBLE_FIELD(geographic_spread),
      D2D_DOUBLE_FIELD(pathloss_constant),
      D2D_DOUBLE_FIELD(pathloss_exponent),
      D2D_DOUBLE_FIELD(shadowing_std),
      D2D_DOUBLE_FIELD(min_link_distance),
      D2D_DOUBLE_FIELD(noise_power),
      D2D_DOUBLE_FIELD(bandwidth_per_channel),
      D2D_DOUBLE_FIELD(p_c_max),
      D2D_DOUBLE_FIELD(p_g_max),
      D2D_DOUBLE_FIELD(sinr_threshold_cu),
      D2D_DOUBLE_FIELD(sinr_threshold_mg),
      D2D_DOUBLE_FIELD(outage_target),
      D2D_DOUBLE_FIELD(outage_prob_threshold),
      D2D_DOUBLE_FIELD(gain_ratio_threshold),
      D2D_DOUBLE_FIELD(interference_cap),
      D2D_DOUBLE_FIELD(density_cu),
      D2D_DOUBLE_FIELD(density_mg),
      D2D_INT_FIELD(priority_group),
      Field{"dominant_interferer_only",
            [](ScenarioConfig& c, const std::string& v) {
              c.dominant_interferer_only = parse_bool("dominant_interferer_only", v);
            },
            [](const ScenarioConfig& c) {
              return std::string(c.dominant_interferer_only ? "true" : "false");
            }},
      D2D_DOUBLE_FIELD(stim_epsilon),
      D2D_INT_FIELD(stim_max_iterations),
      D2D_INT_FIELD(rng_seed),
      D2D_INT_FIELD(monte_carlo_runs),
  };
  return table;
}

#undef D2D_DOUBLE_FIELD
#undef D2D_INT_FIELD

}  // namespace

int ScenarioConfig::receivers_of(int g) const {
  if (receivers_per_mg.size() == 1) return receivers_per_mg.front();
  return receivers_per_mg.at(static_cast<std::size_t>(g));
}

int ScenarioConfig::total_receivers() const {
  int total = 0;
  for (int g = 0; g < num_mgs; ++g) total += receivers_of(g);
  return total;
}

double ScenarioConfig::effective_density_cu() const {
  if (density_cu > 0.0) return density_cu;
  return 1.0 / (std::numbers::pi * cell_radius * cell_radius);
}

double ScenarioConfig::effective_density_mg() const {
  if (density_mg > 0.0) return density_mg;
  return static_cast<double>(num_mgs) /
         (static_cast<double>(num_cus) * std::numbers::pi * cell_radius * cell_radius);
}

double ScenarioConfig::cu_min_rate() const {
  return bandwidth_per_channel * std::log2(1.0 + gamma_cu());
}

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
  };
  auto finite = [](double v) { return std::isfinite(v); };

  require(finite(cell_radius) && cell_radius > 0.0, "cell_radius must be > 0");
  require(num_cus >= 1, "num_cus must be >= 1");
  require(num_mgs >= 0, "num_mgs must be >= 0");
  require(!receivers_per_mg.empty(), "receivers_per_mg must not be empty");
  require(receivers_per_mg.size() == 1 ||
              receivers_per_mg.size() == static_cast<std::size_t>(num_mgs),
          "receivers_per_mg must have one entry or one per group");
  for (int r : receivers_per_mg) require(r >= 1, "every group needs at least one receiver");
  require(finite(geographic_spread) && geographic_spread > 0.0,
          "geographic_spread must be > 0");
  require(geographic_spread < cell_radius, "geographic_spread must be < cell_radius");
  require(finite(pathloss_constant), "pathloss_constant must be finite");
  require(pathloss_exponent >= 2.0 && pathloss_exponent <= 6.0,
          "pathloss_exponent must lie in [2, 6]");
  require(finite(shadowing_std) && shadowing_std >= 0.0, "shadowing_std must be >= 0");
  require(finite(min_link_distance) && min_link_distance > 0.0,
          "min_link_distance must be > 0");
  for (double dbm : {noise_power, p_c_max, p_g_max}) {
    const double w = dbm_to_watts(dbm);
    require(finite(dbm) && finite(w) && w > 0.0, "powers must convert to positive watts");
  }
  require(finite(bandwidth_per_channel) && bandwidth_per_channel > 0.0,
          "bandwidth_per_channel must be > 0");
  require(finite(sinr_threshold_cu) && finite(sinr_threshold_mg) && finite(outage_target),
          "thresholds must be finite");
  require(outage_prob_threshold > 0.0 && outage_prob_threshold < 1.0,
          "outage_prob_threshold must lie in (0, 1)");
  require(finite(gain_ratio_threshold) && gain_ratio_threshold >= 0.0,
          "gain_ratio_threshold must be >= 0");
  require(finite(interference_cap) && interference_cap >= 0.0,
          "interference_cap must be >= 0");
  require(finite(density_cu) && density_cu >= 0.0 && finite(density_mg) && density_mg >= 0.0,
          "densities must be >= 0");
  require(priority_group >= 0 && (num_mgs == 0 || priority_group < num_mgs),
          "priority_group out of range");
  require(stim_epsilon > 0.0, "stim_epsilon must be > 0");
  require(stim_max_iterations >= 1, "stim_max_iterations must be >= 1");
  require(monte_carlo_runs >= 1, "monte_carlo_runs must be >= 1");
}

std::string ScenarioConfig::to_text() const {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.get(*this);
    out += '\n';
  }
  return out;
}

std::uint64_t ScenarioConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void set_config_value(ScenarioConfig& config, const std::string& key, const std::string& value) {
  for (const auto& f : fields()) {
    if (key == f.key) {
      f.set(config, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig config;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
    }
    set_config_value(config, key, value);
  }
  return config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& f : fields()) keys.emplace_back(f.key);
  return keys;
}

}  // namespace d2d
