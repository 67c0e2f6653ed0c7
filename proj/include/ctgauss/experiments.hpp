#pragma once

#include <string>

#include "ctgauss/config.hpp"
#include "ctgauss/information.hpp"
#include "ctgauss/table.hpp"

namespace ctgauss {

struct ExperimentResult {
  Table table;
  bool assertions_pass = true;
  // Reported on stderr only; the emitted CSV/JSON must be byte-identical
  // across reruns and worker counts, so timing never enters the data.
  double wall_seconds = 0.0;
};

// Scenario catalog. "binary" and "const" are in the exactly-solvable class;
// "binary-feedback" and "pulse" go through the Euler-Maruyama machinery.
bool scenario_in_whitelist(const std::string& scenario);
MessageChannel scenario_exact_channel(const ExperimentConfig& cfg);
MessageChannel scenario_em_channel(const ExperimentConfig& cfg, EmVariant variant);

ExperimentResult run_converge_sampling(const ExperimentConfig& cfg);
ExperimentResult run_converge_approx(const ExperimentConfig& cfg);
ExperimentResult run_converge_mmse(const ExperimentConfig& cfg);
ExperimentResult run_mac_demo(const ExperimentConfig& cfg);
ExperimentResult run_bc_demo(const ExperimentConfig& cfg);
ExperimentResult run_sk_series(const ExperimentConfig& cfg);
ExperimentResult run_mi_estimate(const ExperimentConfig& cfg);

std::string render_table(const Table& table, const std::string& format);
void write_output(const std::string& rendered, const std::string& out_path);

}  // namespace ctgauss
