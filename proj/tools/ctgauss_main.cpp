// Command-line front end: capacity queries, MI estimation, convergence
// suites, multi-user demos. Exit codes: 0 pass, 1 usage, 2 assertion
// failure, 3 numerical fault.

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctgauss/capacity.hpp"
#include "ctgauss/errors.hpp"
#include "ctgauss/experiments.hpp"

namespace {

using ctgauss::ExperimentConfig;
using ctgauss::ExperimentResult;
using ctgauss::Table;

constexpr double kLn2 = 0.6931471805599453;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAssertion = 2;
constexpr int kExitNumerical = 3;

// Every option value is collected as a (key, value) pair and applied onto
// the config after the config file, so flags win over the file.
struct KeyValues {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> kv;
};

void add_key(CLI::App* cmd, KeyValues& store, const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      "--" + key, [&store, key](const std::string& v) { store.kv.emplace_back(key, v); }, help);
}

void add_flag_key(CLI::App* cmd, KeyValues& store, const std::string& key,
                  const std::string& help) {
  cmd->add_flag_callback(
      "--" + key, [&store, key] { store.kv.emplace_back(key, "1"); }, help);
}

void add_common(CLI::App* cmd, KeyValues& store) {
  cmd->add_option("--config", store.config_path, "key=value config file; flags win over it");
  add_key(cmd, store, "seed", "RNG seed (default 42)");
  add_key(cmd, store, "trials", "Monte Carlo trials (default 20000)");
  add_key(cmd, store, "workers", "worker threads; 0 = logical cores (default)");
  add_key(cmd, store, "out", "output path (default stdout)");
  add_key(cmd, store, "format", "csv|json (default csv)");
  add_flag_key(cmd, store, "bits", "display rates in bits instead of nats (display only)");
}

ExperimentConfig build_config(const KeyValues& store,
                              const std::vector<std::pair<std::string, std::string>>& defaults) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : defaults) cfg.apply(k, v);
  if (!store.config_path.empty())
    for (const auto& [k, v] : ctgauss::parse_config_file(store.config_path)) cfg.apply(k, v);
  for (const auto& [k, v] : store.kv) cfg.apply(k, v);
  return cfg;
}

int emit_experiment(const ExperimentResult& result, const ExperimentConfig& cfg,
                    const char* name) {
  ctgauss::write_output(ctgauss::render_table(result.table, cfg.format), cfg.out);
  std::fprintf(stderr, "ctgauss: %s finished in %.2f s; assertions %s\n", name,
               result.wall_seconds, result.assertions_pass ? "pass" : "FAIL");
  return result.assertions_pass ? kExitOk : kExitAssertion;
}

double display_rate(double nats, bool bits) { return bits ? nats / kLn2 : nats; }
const char* rate_unit(bool bits) { return bits ? "bits/time" : "nats/time"; }

std::string join_coeffs(const std::vector<double>& coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ';';
    s += ctgauss::format_double(coeffs[i]);
  }
  return s;
}

Table region_table(const char* kind, const ctgauss::RateRegion& region) {
  Table table({"experiment", "kind", "constraint", "coeffs", "bound"});
  for (std::size_t i = 0; i < region.constraints.size(); ++i)
    table.add_row({std::string("capacity"), std::string(kind), static_cast<std::int64_t>(i),
                   join_coeffs(region.constraints[i].coeff), region.constraints[i].bound});
  return table;
}

void print_region(const ctgauss::RateRegion& region, bool bits) {
  for (const auto& c : region.constraints) {
    std::string lhs;
    bool first = true;
    for (std::size_t i = 0; i < c.coeff.size(); ++i) {
      if (c.coeff[i] == 0.0) continue;
      if (!first) lhs += " + ";
      if (c.coeff[i] != 1.0) lhs += ctgauss::format_double(c.coeff[i]) + "*";
      lhs += "R" + std::to_string(i + 1);
      first = false;
    }
    std::printf("%s <= %s %s\n", lhs.c_str(),
                ctgauss::format_double(display_rate(c.bound, bits)).c_str(), rate_unit(bits));
  }
}

int emit_capacity(const Table& table, const ExperimentConfig& cfg,
                  const std::function<void()>& print_human) {
  if (cfg.format == "json" || !cfg.out.empty()) {
    ctgauss::write_output(ctgauss::render_table(table, cfg.format), cfg.out);
    if (cfg.out.empty()) return kExitOk;
  }
  print_human();
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"continuous-time white Gaussian channel laboratory"};
  app.require_subcommand(1);

  KeyValues store;
  std::string pending;  // subcommand chosen, resolved after parse

  // capacity ---------------------------------------------------------------
  CLI::App* capacity = app.add_subcommand("capacity", "closed-form capacities and regions");
  capacity->require_subcommand(1);
  for (const char* sub : {"point", "mac", "bc", "bc-degraded", "sk-gain"}) {
    CLI::App* c = capacity->add_subcommand(sub, "");
    add_common(c, store);
    add_key(c, store, "power", "average power P");
    if (std::string(sub) == "point") add_key(c, store, "bandwidth", "bandwidth (0 = infinite)");
    if (std::string(sub) == "mac") add_key(c, store, "powers", "per-user powers, comma separated");
    if (std::string(sub) == "bc") add_key(c, store, "snrs", "per-receiver snrs, comma separated");
    if (std::string(sub) == "bc-degraded") {
      add_key(c, store, "n1", "receiver-1 noise level N1");
      add_key(c, store, "n2", "extra receiver-2 noise level N2");
      add_flag_key(c, store, "feedback", "with feedback (region is unchanged)");
    }
    c->callback([&pending, sub] { pending = std::string("capacity ") + sub; });
  }

  // mi estimate --------------------------------------------------------------
  CLI::App* mi = app.add_subcommand("mi", "mutual information estimation");
  CLI::App* mi_est = mi->add_subcommand("estimate", "one-off MI estimate");
  add_common(mi_est, store);
  for (const char* k :
       {"scenario", "method", "variant", "n", "T", "c", "kappa", "clamp", "alphabet"})
    add_key(mi_est, store, k, "");
  mi_est->callback([&pending] { pending = "mi estimate"; });

  // converge suites -----------------------------------------------------------
  CLI::App* converge = app.add_subcommand("converge", "grid-convergence suites");
  converge->require_subcommand(1);
  for (const char* sub : {"sampling", "approx", "mmse"}) {
    CLI::App* c = converge->add_subcommand(sub, "");
    add_common(c, store);
    for (const char* k :
         {"scenario", "variant", "grid_sizes", "T", "c", "kappa", "clamp", "alphabet"})
      add_key(c, store, k, "");
    c->callback([&pending, sub] { pending = std::string("converge ") + sub; });
  }

  // demos ------------------------------------------------------------------
  CLI::App* macd = app.add_subcommand("mac-demo", "two-user OU MAC table over an a-sweep");
  add_common(macd, store);
  for (const char* k : {"a_sweep", "P1", "P2", "T"}) add_key(macd, store, k, "");
  macd->callback([&pending] { pending = "mac-demo"; });

  CLI::App* bcd = app.add_subcommand("bc-demo", "I-MMSE snr sweep (OU + binary scenarios)");
  add_common(bcd, store);
  for (const char* k : {"snr_list", "a", "P", "c", "T"}) add_key(bcd, store, k, "");
  bcd->callback([&pending] { pending = "bc-demo"; });

  CLI::App* sks = app.add_subcommand("sk-series", "feedback rate series over a stepsize sweep");
  add_common(sks, store);
  for (const char* k : {"power", "deltas", "steps"}) add_key(sks, store, k, "");
  sks->callback([&pending] { pending = "sk-series"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  using Defaults = std::vector<std::pair<std::string, std::string>>;
  ExperimentConfig cfg;

  if (pending == "capacity point") {
    cfg = build_config(store, {});
    const double value = cfg.bandwidth > 0.0
                             ? ctgauss::bandlimited_capacity(cfg.power, cfg.bandwidth)
                             : ctgauss::infinite_bandwidth_capacity(cfg.power);
    Table table({"experiment", "kind", "power", "bandwidth", "capacity"});
    table.add_row(
        {std::string("capacity"), std::string("point"), cfg.power, cfg.bandwidth, value});
    return emit_capacity(table, cfg, [&] {
      std::printf("capacity = %s %s\n",
                  ctgauss::format_double(display_rate(value, cfg.bits)).c_str(),
                  rate_unit(cfg.bits));
    });
  }
  if (pending == "capacity mac") {
    cfg = build_config(store, {});
    const auto region = ctgauss::mac_region(cfg.powers);
    return emit_capacity(region_table("mac", region), cfg,
                         [&] { print_region(region, cfg.bits); });
  }
  if (pending == "capacity bc") {
    cfg = build_config(store, Defaults{{"power", "2"}});
    const auto region = ctgauss::bc_region(cfg.power, cfg.snrs);
    return emit_capacity(region_table("bc", region), cfg,
                         [&] { print_region(region, cfg.bits); });
  }
  if (pending == "capacity bc-degraded") {
    cfg = build_config(store, Defaults{{"power", "2"}});
    const auto region = ctgauss::degraded_bc_region(cfg.power, cfg.n1, cfg.n2, cfg.feedback);
    return emit_capacity(region_table("bc-degraded", region), cfg, [&] {
      print_region(region, cfg.bits);
      std::printf("# identical with and without feedback\n");
    });
  }
  if (pending == "capacity sk-gain") {
    cfg = build_config(store, {});
    const auto report = ctgauss::sk_bc_report(cfg.power);
    Table table({"experiment", "kind", "power", "rho_star", "per_user_rate", "sum_rate",
                 "no_feedback_bound", "gain"});
    table.add_row({std::string("capacity"), std::string("sk-gain"), report.power, report.rho,
                   report.per_user_rate, report.sum_rate, report.no_feedback_bound, report.gain});
    return emit_capacity(table, cfg, [&] {
      std::printf("rho* = %s\n", ctgauss::format_double(report.rho).c_str());
      std::printf("per-user rate = %s %s\n",
                  ctgauss::format_double(display_rate(report.per_user_rate, cfg.bits)).c_str(),
                  rate_unit(cfg.bits));
      std::printf(
          "sum rate = %s %s (no-feedback bound %s)\n",
          ctgauss::format_double(display_rate(report.sum_rate, cfg.bits)).c_str(),
          rate_unit(cfg.bits),
          ctgauss::format_double(display_rate(report.no_feedback_bound, cfg.bits)).c_str());
      std::printf("gain = %s\n", ctgauss::format_double(report.gain).c_str());
    });
  }

  if (pending == "mi estimate") {
    cfg = build_config(store, Defaults{{"variant", "all"}});
    return emit_experiment(ctgauss::run_mi_estimate(cfg), cfg, "mi estimate");
  }
  if (pending == "converge sampling") {
    cfg = build_config(store, {});
    return emit_experiment(ctgauss::run_converge_sampling(cfg), cfg, "converge sampling");
  }
  if (pending == "converge approx") {
    cfg = build_config(
        store, Defaults{{"scenario", "binary-feedback"}, {"grid_sizes", "32,64,128,256"}});
    return emit_experiment(ctgauss::run_converge_approx(cfg), cfg, "converge approx");
  }
  if (pending == "converge mmse") {
    cfg = build_config(store, {});
    return emit_experiment(ctgauss::run_converge_mmse(cfg), cfg, "converge mmse");
  }
  if (pending == "mac-demo") {
    cfg = build_config(store, Defaults{{"T", "5"}});
    return emit_experiment(ctgauss::run_mac_demo(cfg), cfg, "mac-demo");
  }
  if (pending == "bc-demo") {
    cfg = build_config(store, Defaults{{"T", "5"}, {"a", "10"}, {"P", "1"}});
    return emit_experiment(ctgauss::run_bc_demo(cfg), cfg, "bc-demo");
  }
  if (pending == "sk-series") {
    cfg = build_config(store, Defaults{{"power", "1"}});
    return emit_experiment(ctgauss::run_sk_series(cfg), cfg, "sk-series");
  }

  std::fprintf(stderr, "ctgauss: no subcommand selected\n");
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ctgauss::numerical_fault& e) {
    std::fprintf(stderr, "ctgauss: numerical fault: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "ctgauss: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ctgauss: error: %s\n", e.what());
    return kExitNumerical;
  }
}
