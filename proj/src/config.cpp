#include "roelab/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace roelab {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

}  // namespace

IniConfig IniConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Error::Kind::config, "cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

IniConfig IniConfig::parse(const std::string& text) {
  IniConfig cfg;
  cfg.text_ = text;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw Error(Error::Kind::config, "config line " + std::to_string(lineno) + ": bad section");
      section = trim(t.substr(1, t.size() - 2));
      cfg.sections_[section];
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(Error::Kind::config, "config line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw Error(Error::Kind::config, "config line " + std::to_string(lineno) + ": empty key");
    if (cfg.sections_[section].count(key))
      throw Error(Error::Kind::config, "config: duplicate key '" + key + "'");
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

bool IniConfig::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string IniConfig::get(const std::string& section, const std::string& key) const {
  if (!has(section, key))
    throw Error(Error::Kind::config, "config: missing [" + section + "] " + key);
  return sections_.at(section).at(key);
}

std::string IniConfig::get_or(const std::string& section, const std::string& key,
                              const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double IniConfig::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return std::stod(get(section, key));
  } catch (const std::exception&) {
    throw Error(Error::Kind::config, "config: [" + section + "] " + key + " is not a number");
  }
}

int IniConfig::get_int(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return std::stoi(get(section, key));
  } catch (const std::exception&) {
    throw Error(Error::Kind::config, "config: [" + section + "] " + key + " is not an integer");
  }
}

std::uint64_t IniConfig::get_u64(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  try {
    return std::stoull(get(section, key));
  } catch (const std::exception&) {
    throw Error(Error::Kind::config, "config: [" + section + "] " + key + " is not an integer");
  }
}

namespace {

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : value) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

}  // namespace

std::vector<int> IniConfig::get_int_list(const std::string& section, const std::string& key,
                                         const std::vector<int>& fallback) const {
  if (!has(section, key)) return fallback;
  std::vector<int> out;
  for (const auto& p : split_list(get(section, key))) out.push_back(std::stoi(p));
  return out;
}

std::vector<std::uint64_t> IniConfig::get_u64_list(const std::string& section,
                                                   const std::string& key) const {
  std::vector<std::uint64_t> out;
  if (!has(section, key)) return out;
  for (const auto& p : split_list(get(section, key))) out.push_back(std::stoull(p));
  return out;
}

std::vector<double> IniConfig::get_double_list(const std::string& section,
                                               const std::string& key) const {
  std::vector<double> out;
  if (!has(section, key)) return out;
  for (const auto& p : split_list(get(section, key))) out.push_back(std::stod(p));
  return out;
}

void IniConfig::validate(const std::map<std::string, std::set<std::string>>& schema) const {
  for (const auto& [section, keys] : sections_) {
    auto it = schema.find(section);
    if (it == schema.end())
      throw Error(Error::Kind::config, "config: unknown section [" + section + "]");
    for (const auto& [key, value] : keys)
      if (!it->second.count(key))
        throw Error(Error::Kind::config, "config: unknown key '" + key + "' in [" + section + "]");
  }
}

const std::set<std::string> kModelKeys = {
    "kind",        "d",          "L",          "N",           "bc",
    "flux_p",      "flux_q",     "t1",         "t2",          "stack_axis",
    "interlayer",  "delone_amplitude", "delone_cutoff"};

const std::set<std::string> kDisorderKeys = {"W", "hopping_W", "positional", "seed", "seeds",
                                             "W_list"};

const std::set<std::string> kPairingKeys = {"L_list",      "tau",          "kappa", "gap_index",
                                            "fermi_energy", "oracle",      "oracle_radius_frac",
                                            "gap_close_frac", "gap_window_L"};

const std::set<std::string> kOutputKeys = {"dir", "prefix"};

ModelSpec model_from_config(const IniConfig& cfg) {
  ModelSpec spec;
  std::string kind = cfg.get_or("model", "kind", "laplacian_potential");
  if (kind == "laplacian_potential")
    spec.kind = ModelKind::laplacian_potential;
  else if (kind == "hofstadter")
    spec.kind = ModelKind::hofstadter;
  else if (kind == "ssh_stack")
    spec.kind = ModelKind::ssh_stack;
  else if (kind == "delone_laplacian")
    spec.kind = ModelKind::delone_laplacian;
  else
    throw Error(Error::Kind::config, "config: unknown model kind '" + kind + "'");

  spec.d = cfg.get_int("model", "d", spec.kind == ModelKind::hofstadter ? 2 : 1);
  spec.L = cfg.get_int("model", "L", 8);
  spec.N = cfg.get_int("model", "N", spec.kind == ModelKind::ssh_stack ? 2 : 1);
  std::string bc = cfg.get_or("model", "bc", "open");
  if (bc == "open")
    spec.bc = Boundary::open;
  else if (bc == "periodic")
    spec.bc = Boundary::periodic;
  else
    throw Error(Error::Kind::config, "config: bc must be open or periodic");
  spec.flux_p = cfg.get_int("model", "flux_p", 1);
  spec.flux_q = cfg.get_int("model", "flux_q", 3);
  spec.t1 = cfg.get_double("model", "t1", 0.5);
  spec.t2 = cfg.get_double("model", "t2", 1.0);
  spec.stack_axis = cfg.get_int("model", "stack_axis", 2);
  spec.interlayer = cfg.get_double("model", "interlayer", 0.1);
  spec.delone_amplitude = cfg.get_double("model", "delone_amplitude", 0.2);
  spec.delone_cutoff = cfg.get_double("model", "delone_cutoff", 1.6);
  spec.validate();
  return spec;
}

DisorderSpec disorder_from_config(const IniConfig& cfg) {
  DisorderSpec dis;
  dis.W = cfg.get_double("disorder", "W", 0.0);
  dis.hopping_W = cfg.get_double("disorder", "hopping_W", 0.0);
  dis.positional = cfg.get_double("disorder", "positional", 0.0);
  dis.seed = cfg.get_u64("disorder", "seed", 1);
  return dis;
}

PairingExperimentConfig pairing_from_config(const IniConfig& cfg) {
  PairingExperimentConfig pc;
  pc.l_list = cfg.get_int_list("pairing", "L_list", {8, 12, 16});
  pc.tau = cfg.get_double("pairing", "tau", 0.05);
  pc.kappa = cfg.get_double("pairing", "kappa", 0.0);
  pc.gap_index = cfg.get_int("pairing", "gap_index", 0);
  pc.fermi_energy =
      cfg.get_double("pairing", "fermi_energy", std::numeric_limits<double>::quiet_NaN());
  pc.run_oracle = cfg.get_or("pairing", "oracle", "on") != "off";
  pc.oracle_radius_frac = cfg.get_double("pairing", "oracle_radius_frac", 0.5);
  pc.gap_close_frac = cfg.get_double("pairing", "gap_close_frac", 0.15);
  pc.gap_window_L = cfg.get_int("pairing", "gap_window_L", 0);
  return pc;
}

}  // namespace roelab
