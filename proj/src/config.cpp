#include <fstream>
#include <sstream>

#include "rhd/run.hpp"

namespace rhd {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size()) {
    throw ConfigError("config: bad number for '" + key + "': " + value);
  }
  return out;
}

int to_int(const std::string& key, const std::string& value) {
  const double d = to_double(key, value);
  const int i = static_cast<int>(d);
  if (d != i) throw ConfigError("config: '" + key + "' must be an integer");
  return i;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ConfigError("config: '" + key + "' must be a boolean");
}

std::vector<double> to_doubles(const std::string& key,
                               const std::string& value, std::size_t n) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(to_double(key, trim(item)));
  }
  if (out.size() != n) {
    throw ConfigError("config: '" + key + "' needs " + std::to_string(n) +
                      " comma-separated numbers");
  }
  return out;
}

}  // namespace

LimiterMode parse_limiter_mode(const std::string& word) {
  if (word == "none") return LimiterMode::none;
  if (word == "bp") return LimiterMode::bp;
  if (word == "irp") return LimiterMode::irp;
  if (word == "irp_qtilde") return LimiterMode::irp_qtilde;
  throw ConfigError("config: unknown limiter mode '" + word + "'");
}

TimeScheme parse_time_scheme(const std::string& word) {
  if (word == "fe") return TimeScheme::fe;
  if (word == "ssprk3") return TimeScheme::ssprk3;
  if (word == "sspms3") return TimeScheme::sspms3;
  throw ConfigError("config: unknown time scheme '" + word + "'");
}

const char* limiter_mode_name(LimiterMode mode) {
  switch (mode) {
    case LimiterMode::none: return "none";
    case LimiterMode::bp: return "bp";
    case LimiterMode::irp: return "irp";
    case LimiterMode::irp_qtilde: return "irp_qtilde";
  }
  return "?";
}

const char* time_scheme_name(TimeScheme scheme) {
  switch (scheme) {
    case TimeScheme::fe: return "fe";
    case TimeScheme::ssprk3: return "ssprk3";
    case TimeScheme::sspms3: return "sspms3";
  }
  return "?";
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  std::stringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section marker
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    }

    if (key == "scenario") {
      config.scenario = value;
    } else if (key == "ic") {
      config.ic_kind = value;
    } else if (key == "ic_left") {
      const auto v = to_doubles(key, value, 3);
      config.ic_left = {v[0], v[1], v[2]};
    } else if (key == "ic_right") {
      const auto v = to_doubles(key, value, 3);
      config.ic_right = {v[0], v[1], v[2]};
    } else if (key == "ic_split") {
      config.ic_split = to_double(key, value);
    } else if (key == "domain") {
      const auto v = to_doubles(key, value, 2);
      config.ic_domain = {v[0], v[1]};
    } else if (key == "boundary") {
      config.ic_boundary = value;
    } else if (key == "degree" || key == "k") {
      config.degree = to_int(key, value);
    } else if (key == "nx") {
      config.cells[0] = to_int(key, value);
    } else if (key == "ny") {
      config.cells[1] = to_int(key, value);
    } else if (key == "cfl") {
      config.cfl = to_double(key, value);
    } else if (key == "dt") {
      config.dt = to_double(key, value);
    } else if (key == "dt_coeff") {
      config.dt_coeff = to_double(key, value);
    } else if (key == "dt_power") {
      config.dt_power = to_double(key, value);
    } else if (key == "t_final") {
      config.t_final = to_double(key, value);
    } else if (key == "limiter") {
      config.limiter = parse_limiter_mode(value);
    } else if (key == "scheme") {
      config.scheme = parse_time_scheme(value);
    } else if (key == "gamma") {
      config.gamma = to_double(key, value);
    } else if (key == "s0") {
      config.s0 = to_double(key, value);
    } else if (key == "outdir") {
      config.outdir = value;
    } else if (key == "snapshot_interval") {
      config.snapshot_interval = to_double(key, value);
    } else if (key == "monitor") {
      config.monitor = to_bool(key, value);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(to_double(key, value));
    } else if (key == "threads") {
      config.threads = to_int(key, value);
    } else {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace rhd
