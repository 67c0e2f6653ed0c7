#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ctgauss {

// One flat bag of experiment parameters. Every key is settable from a
// key=value config file ('#' comments) and from a --key value flag; flags
// win over the file.
struct ExperimentConfig {
  // Scenario
  std::string scenario = "binary";  // binary | binary-feedback | pulse | const
  double horizon = 1.0;
  std::size_t alphabet = 2;
  double c = 1.0;
  double kappa = 0.5;
  double clamp = 2.0;
  std::vector<std::size_t> grid_sizes = {4, 16, 64, 256};
  std::string variant = "all";  // an EM variant name, or "all"
  std::size_t n = 256;          // single-grid commands
  std::string method = "grid-density";

  // OU / multiuser parameters
  double a = 50.0;
  double P = 1.0;
  double P1 = 1.0, P2 = 1.0;
  std::vector<double> a_sweep = {5.0, 50.0, 500.0};
  std::vector<double> snr_list = {0.5, 1.0, 2.0, 4.0, 8.0};

  // Capacity command parameters
  double power = 1.0;
  std::vector<double> powers = {2.0, 4.0};
  std::vector<double> snrs = {1.0, 2.0};
  double bandwidth = 0.0;  // 0 = infinite-bandwidth point capacity
  double n1 = 1.0, n2 = 1.0;
  bool feedback = false;
  std::vector<double> deltas = {1e-2, 1e-3, 1e-4};
  std::size_t steps = 10000;

  // Monte Carlo / output
  std::size_t trials = 20000;
  std::uint64_t seed = 42;
  unsigned workers = 0;  // 0 = logical cores
  std::string out;       // empty = stdout
  std::string format = "csv";
  bool bits = false;

  // Applies one key=value pair; throws usage_error on unknown keys or
  // unparsable values.
  void apply(const std::string& key, const std::string& value);

  void validate() const;  // throws usage_error
};

// key=value lines, '#' comments, blank lines ignored.
std::map<std::string, std::string> parse_config_file(const std::string& path);

std::vector<double> parse_double_list(const std::string& text);
std::vector<std::size_t> parse_size_list(const std::string& text);

}  // namespace ctgauss
