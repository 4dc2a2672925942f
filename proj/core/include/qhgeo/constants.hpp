#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qhgeo {

/// Predicted constants of one implication step, as a pure function of its
/// inputs. Values are listed in a fixed order.
struct ConstantsLedger {
  std::string step;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> derived;

  /// Derived value by name; throws InternalError when absent.
  double at(std::string_view name) const;
};

/// Step ids and what they compute:
///
///   relative_from_partial_lipschitz     (L, lambda)   -> c1 = L, t0 = lambda
///   semisolid_from_relative             (c, c1, t0)   -> t1, c2 = 24 c c1 / t1
///   partial_lipschitz_from_semisolid    (c, c2)       -> lambda = 1/(36 c^2 c2), L = 24 c c2
///   local_bilipschitz_from_relative     (c1, t0)      -> theta1 = t0/(8 c1), L1 = 4 c1
///   local_qs_from_local_bilipschitz     (theta1, L1)  -> q = theta1, eta_slope = L1^2
///   partial_bilipschitz_from_local_qs   (c, c2, q)    -> q1, L = 8 c c2/q1, lambda = q1/(2 c c2)
///   qh_step_bound                       (A, q, eta_slope) -> q1 = q/2, t1, step_bound = 4 A^2 log 2
///
/// with t1 = min{log(t0/2 + 1), log(1 + 1/(3 c1 c))} for the semisolid step,
/// q1 = min{1/(2 + c), q/2} for the local-QS step and
/// t1 = min{log(1 + q1 / (4 A eta_slope)), log(1 + q/2)} for the step bound.
///
/// Throws ConfigError for an unknown step, a missing input or an input
/// outside the hypothesis range, naming the offending input.
ConstantsLedger predicted_constants(std::string_view step,
                                    const std::map<std::string, double>& inputs);

std::vector<std::string> ledger_steps();

}  // namespace qhgeo
