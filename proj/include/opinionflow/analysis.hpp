#pragma once

#include <string_view>
#include <vector>

#include "opinionflow/graph.hpp"
#include "opinionflow/spectral.hpp"
#include "opinionflow/types.hpp"

namespace opinionflow {

enum class SpecialCase {
  kUndirectedSum,      // connected undirected: stable iff sum(b) = 0
  kGloballyReachable,  // one sink component: stable iff sum over N_G of w_1i b_i = 0
  kGeneral,
};

std::string_view special_case_name(SpecialCase c) noexcept;

struct StabilityReport {
  bool stable = false;
  /// w_i^T b_eff for each zero mode i.
  std::vector<double> projections;
  SpecialCase special_case = SpecialCase::kGeneral;
  /// sum(b_eff) for kUndirectedSum, sum_{N_G} w_1i b_i for
  /// kGloballyReachable, unused (0) otherwise.
  double special_value = 0.0;
  Vector effective_bias;
};

/// Stable iff |w_i^T b_eff| < stability_tol for every zero mode.
StabilityReport stability_check(const ZeroEigenstructure& eig, const Vector& b_eff,
                                double stability_tol = kDefaultStabilityTol);

/// Same verdict; additionally tags the special case from the graph's
/// connectivity.
StabilityReport stability_check(const ZeroEigenstructure& eig, const Vector& b_eff,
                                const ConnectivityReport& connectivity,
                                double stability_tol = kDefaultStabilityTol);

struct SteadyStatePrediction {
  Vector x_bar;
  /// |-L x_bar + b_eff|_inf
  double residual = 0.0;
  /// w_i^T x0 per zero mode.
  std::vector<double> conserved_values;
};

/// Limit of x(t) under constant forcing b_eff. Solves the consistent
/// augmented system [L; W0^T] x = [b_eff; W0^T x0] in the least-squares
/// sense. Throws Error(kNotStable) if b_eff violates the stability condition
/// and Error(kSolverFailure) if the augmented matrix is rank deficient.
SteadyStatePrediction steady_state(const Laplacian& lap, const ZeroEigenstructure& eig,
                                   const Vector& x0, const Vector& b_eff,
                                   double stability_tol = kDefaultStabilityTol);

struct ModeDrift {
  int mode = 0;
  double slope = 0.0;      // w_i^T b_eff
  double intercept = 0.0;  // w_i^T x0
};

/// w_i^T x(t) = intercept + slope * t for every zero mode.
std::vector<ModeDrift> drift_rates(const ZeroEigenstructure& eig, const Vector& x0,
                                   const Vector& b_eff);

}  // namespace opinionflow
