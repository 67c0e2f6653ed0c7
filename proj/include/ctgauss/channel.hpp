#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ctgauss/grid.hpp"
#include "ctgauss/path.hpp"
#include "ctgauss/policy.hpp"
#include "ctgauss/process.hpp"
#include "ctgauss/rng.hpp"

namespace ctgauss {

// The four drift-freezing rules. All recursions share
//   Y(t_{i+1}) = Y(t_i) + integral of the frozen drift over the step + dB,
// followed by linear interpolation between knots; they differ in whether the
// drift's time argument stays live over the step and whether the W history is
// the original path or its piecewise-linear (chord) version.
enum class EmVariant {
  frozen_history,     // s live, original W, Y history frozen at t_i
  piecewise_message,  // s live, chord W
  frozen_time,        // s frozen at t_i, original W
  frozen_both,        // s frozen at t_i, chord W
};

const char* em_variant_name(EmVariant v);
std::optional<EmVariant> em_variant_from_name(std::string_view name);

// W side of a channel: either a message (constant-in-time symbol) or an input
// path, possibly sampled on a finer grid than the output.
class DriftSource {
 public:
  static DriftSource message(double symbol);
  static DriftSource input(SamplePath w);

  bool is_message() const noexcept { return !path_.has_value(); }
  double symbol() const noexcept { return symbol_; }
  const SamplePath& path() const { return *path_; }

 private:
  DriftSource() = default;
  double symbol_ = 0.0;
  std::optional<SamplePath> path_;
};

// Drift integral over [t0, t1] under a variant's freezing rule, with the
// histories the rule prescribes. Midpoint quadrature when s stays live;
// the frozen-time rules need none (the integrand is constant).
double em_step_drift(const FeedbackPolicy& policy, EmVariant variant, double t0, double t1,
                     const HistoryView& w_history, const HistoryView& y_history);

// Euler-Maruyama output path on the grid, driven by the given per-step noise
// increments. Throws simulation_fault (with the step index) if the drift
// returns a non-finite value.
SamplePath simulate_em(const FeedbackPolicy& policy, const DriftSource& w, const GridPtr& grid,
                       EmVariant variant, std::span<const double> noise_increments);

// Channels whose sampled law at the knots is available in closed form.
struct ExactChannel {
  enum class Kind { zero, constant_drift, message_scaled, linear_output };
  Kind kind = Kind::zero;
  double c = 0.0;      // drift scale for constant_drift / message_scaled
  double theta = 0.0;  // feedback gain for linear_output: g = -theta * y
};

// Exact joint law of (Y(t_0), ..., Y(t_n)) for the whitelisted channel class,
// driven by the given Brownian increments. linear_output needs its own
// transition noise and is rejected here (not_exactly_solvable).
SamplePath simulate_exact_sampled(const ExactChannel& channel, double message_symbol,
                                  const GridPtr& grid, std::span<const double> noise_increments);

// Same, drawing everything from the stream. Drift-free kinds consume the
// stream exactly like brownian_path; linear_output uses exact OU transitions.
SamplePath simulate_exact_sampled(const ExactChannel& channel, double message_symbol,
                                  const GridPtr& grid, const RngStream& rng);

// One sender of a multiple-access channel.
struct MacUser {
  FeedbackPolicy policy;
  DriftSource w;
};

// Shared-noise MAC: Y(t) = sum_u int g_u + B(t), discretized by the chosen
// variant; every user sees the common output history.
SamplePath simulate_mac(const std::vector<MacUser>& users, const GridPtr& grid, EmVariant variant,
                        std::span<const double> noise_increments);

// Channel parameters for the multi-user simulators.
struct ChannelSpec {
  enum class Role { point_to_point, mac, bc };
  Role role = Role::point_to_point;
  std::vector<double> power;                    // per-user power budget
  std::vector<double> snr;                      // per-receiver snr (bc)
  std::vector<std::vector<double>> noise_corr;  // unit-diagonal PSD; empty = independent
  bool physically_degraded = false;
  double n1 = 0.0, n2 = 0.0;                    // degraded-mode noise levels

  void validate() const;  // throws std::invalid_argument
};

// Broadcast outputs Y_i = sqrt(snr_i) * int g + B_i with (possibly
// correlated) standard Brownian noises. With spec.physically_degraded the
// two-receiver nested-noise form is used instead:
//   Y_1 = int g + sqrt(N1) B_1,  Y_2 = int g + sqrt(N1) B_1 + sqrt(N2) B_2,
// reusing receiver 1's B_1 path exactly. Feedback policies read receiver 1's
// output history.
std::vector<SamplePath> simulate_bc(const MacUser& input, const ChannelSpec& spec,
                                    const GridPtr& grid, EmVariant variant, const RngStream& rng);

// Average-power audit: trapezoid estimate of (1/T) int x^2 ds.
struct PowerAudit {
  bool pass = false;
  double measured = 0.0;
};
PowerAudit audit_power(const SamplePath& x, double power_limit, double horizon);

}  // namespace ctgauss
