#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ctgauss/path.hpp"
#include "ctgauss/rng.hpp"

namespace ctgauss {

// Finite message: index into an alphabet with a prior.
struct Message {
  std::size_t alphabet;
  std::size_t value;
  std::vector<double> prior;

  Message(std::size_t alphabet_size, std::size_t value_index, std::vector<double> prior_probs);
  static Message uniform(std::size_t alphabet_size, std::size_t value_index = 0);
};

// Symbol level for message index m: centered PAM, so a binary alphabet maps
// to -1/+1 and a singleton to 0.
double message_symbol(std::size_t alphabet, std::size_t value);

// Drift functional g(s, W_0^s-history, Y_0^s-history) with its declared
// regularity constants. `lipschitz` is the declared L of the uniform
// Lipschitz / linear growth conditions; `power_ceiling` is a declared bound
// on sup g^2 (infinity when unbounded) used by the converse audits.
struct FeedbackPolicy {
  std::function<double(double, const HistoryView&, const HistoryView&)> drift;
  double lipschitz = 0.0;
  double power_ceiling = 0.0;
  std::string description;
};

FeedbackPolicy zero_policy();
FeedbackPolicy constant_policy(double c);
// g = c * w(s): message- or input-scaled drift.
FeedbackPolicy scaled_input_policy(double c);
// g = -theta * y(s): linear output feedback (OU output).
FeedbackPolicy linear_output_policy(double theta);
// g = c*w(s) - kappa*clamp(y(s), -bound, bound): bounded feedback policy with
// explicit Lipschitz constant max(c, kappa).
FeedbackPolicy clamped_feedback_policy(double c, double kappa, double clamp_bound);
// g = c*w(s)*sin(pi s/(2T)) - kappa*clamp(y(s), -bound, bound): time-varying
// drift; distinguishes all four discretization variants. The declared
// Lipschitz constant assumes |w| <= 1 (the time cross-term scales with the
// input bound), which holds for binary message symbols.
FeedbackPolicy pulse_feedback_policy(double c, double kappa, double clamp_bound, double horizon);

// Distance |s-t| + ||U_0^s - V_0^t|| + ... used by the Lipschitz condition:
// sup_{r<=s} |U(r)-V(r)| + sup_{r in [s,t]} |U(s)-V(r)| for s <= t.
double history_distance(const HistoryView& u, double s, const HistoryView& v, double t);

// Empirical Lipschitz probe over random history pairs. A policy whose
// observed ratio exceeds the declared L by more than 1% is flagged, not
// rejected.
struct LipschitzProbe {
  double max_ratio = 0.0;
  bool flagged = false;
};
LipschitzProbe probe_lipschitz(const FeedbackPolicy& policy, double horizon,
                               const RngStream& rng, std::size_t pairs = 256);

}  // namespace ctgauss
