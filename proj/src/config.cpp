#include "ctgauss/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "ctgauss/channel.hpp"
#include "ctgauss/errors.hpp"

namespace ctgauss {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw usage_error("bad numeric value for " + key + ": '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const unsigned long long u = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw usage_error("bad integer value for " + key + ": '" + v + "'");
  }
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  throw usage_error("bad boolean value for " + key + ": '" + v + "'");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(to_double("list", item));
  }
  if (out.empty()) throw usage_error("empty list: '" + text + "'");
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (double d : parse_double_list(text)) {
    if (d < 1 || d != static_cast<double>(static_cast<std::size_t>(d)))
      throw usage_error("list entries must be positive integers: '" + text + "'");
    out.push_back(static_cast<std::size_t>(d));
  }
  return out;
}

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
  if (key == "scenario") scenario = value;
  else if (key == "T") horizon = to_double(key, value);
  else if (key == "alphabet") alphabet = static_cast<std::size_t>(to_u64(key, value));
  else if (key == "c") c = to_double(key, value);
  else if (key == "kappa") kappa = to_double(key, value);
  else if (key == "clamp") clamp = to_double(key, value);
  else if (key == "grid_sizes") grid_sizes = parse_size_list(value);
  else if (key == "variant") variant = value;
  else if (key == "n") n = static_cast<std::size_t>(to_u64(key, value));
  else if (key == "method") method = value;
  else if (key == "a") a = to_double(key, value);
  else if (key == "P") P = to_double(key, value);
  else if (key == "P1") P1 = to_double(key, value);
  else if (key == "P2") P2 = to_double(key, value);
  else if (key == "a_sweep") a_sweep = parse_double_list(value);
  else if (key == "snr_list") snr_list = parse_double_list(value);
  else if (key == "power") power = to_double(key, value);
  else if (key == "powers") powers = parse_double_list(value);
  else if (key == "snrs") snrs = parse_double_list(value);
  else if (key == "bandwidth") bandwidth = to_double(key, value);
  else if (key == "n1") n1 = to_double(key, value);
  else if (key == "n2") n2 = to_double(key, value);
  else if (key == "feedback") feedback = to_bool(key, value);
  else if (key == "deltas") deltas = parse_double_list(value);
  else if (key == "steps") steps = static_cast<std::size_t>(to_u64(key, value));
  else if (key == "trials") trials = static_cast<std::size_t>(to_u64(key, value));
  else if (key == "seed") seed = to_u64(key, value);
  else if (key == "workers") workers = static_cast<unsigned>(to_u64(key, value));
  else if (key == "out") out = value;
  else if (key == "format") format = value;
  else if (key == "bits") bits = to_bool(key, value);
  else throw usage_error("unknown config key: '" + key + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 100) throw usage_error("trials must be at least 100");
  if (!(horizon > 0.0)) throw usage_error("T must be positive");
  if (grid_sizes.empty()) throw usage_error("grid_sizes must be nonempty");
  for (std::size_t i = 1; i < grid_sizes.size(); ++i)
    if (grid_sizes[i] <= grid_sizes[i - 1])
      throw usage_error("grid_sizes must be strictly increasing");
  if (format != "csv" && format != "json") throw usage_error("format must be csv or json");
  if (variant != "all" && !em_variant_from_name(variant))
    throw usage_error("unknown variant: '" + variant + "'");
  if (alphabet < 1) throw usage_error("alphabet must be at least 1");
  if (!(c >= 0.0) || !(clamp > 0.0)) throw usage_error("scenario parameters must be positive");
  if (!(a > 0.0) || !(P > 0.0)) throw usage_error("OU parameters must be positive");
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw usage_error(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw usage_error(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = value;
  }
  return kv;
}

}  // namespace ctgauss
