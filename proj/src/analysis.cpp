#include "opinionflow/analysis.hpp"

#include <cmath>
#include <string>

#include <Eigen/QR>

#include "opinionflow/error.hpp"

namespace opinionflow {
namespace {

void require_length(const Vector& v, int n, const char* what) {
  if (v.size() != n)
    throw Error(ErrorCode::kDimensionMismatch, std::string(what) + " has length " + std::to_string(v.size()) +
                                                   ", expected " + std::to_string(n));
}

}  // namespace

std::string_view special_case_name(SpecialCase c) noexcept {
  switch (c) {
    case SpecialCase::kUndirectedSum: return "undirected_sum";
    case SpecialCase::kGloballyReachable: return "globally_reachable";
    case SpecialCase::kGeneral: return "general";
  }
  return "unknown";
}

StabilityReport stability_check(const ZeroEigenstructure& eig, const Vector& b_eff, double stability_tol) {
  require_length(b_eff, eig.size(), "bias");
  StabilityReport report;
  report.effective_bias = b_eff;
  const Vector proj = eig.w0.transpose() * b_eff;
  report.projections.assign(proj.data(), proj.data() + proj.size());
  report.stable = (proj.array().abs() < stability_tol).all();
  return report;
}

StabilityReport stability_check(const ZeroEigenstructure& eig, const Vector& b_eff,
                                const ConnectivityReport& connectivity, double stability_tol) {
  StabilityReport report = stability_check(eig, b_eff, stability_tol);
  if (connectivity.graph_class == GraphClass::kUndirected) {
    report.special_case = SpecialCase::kUndirectedSum;
    report.special_value = b_eff.sum();
  } else if (!connectivity.globally_reachable.empty() && eig.n_z == 1) {
    report.special_case = SpecialCase::kGloballyReachable;
    double acc = 0.0;
    for (int node : connectivity.globally_reachable) acc += eig.w0(node - 1, 0) * b_eff(node - 1);
    report.special_value = acc;
  }
  return report;
}

SteadyStatePrediction steady_state(const Laplacian& lap, const ZeroEigenstructure& eig, const Vector& x0,
                                   const Vector& b_eff, double stability_tol) {
  const int n = lap.size();
  require_length(x0, n, "initial state");
  require_length(b_eff, n, "bias");
  if (eig.size() != n) throw Error(ErrorCode::kDimensionMismatch, "zero eigenstructure does not match L");
  if (!stability_check(eig, b_eff, stability_tol).stable)
    throw Error(ErrorCode::kNotStable, "bias has a nonzero projection on a zero mode; no steady state exists");

  const int nz = eig.n_z;
  Matrix a(n + nz, n);
  a.topRows(n) = lap.matrix();
  a.bottomRows(nz) = eig.w0.transpose();
  Vector rhs(n + nz);
  rhs.head(n) = b_eff;
  const Vector conserved = eig.w0.transpose() * x0;
  rhs.tail(nz) = conserved;

  Eigen::ColPivHouseholderQR<Matrix> qr(a);
  if (qr.rank() < n) throw Error(ErrorCode::kSolverFailure, "augmented steady-state system is rank deficient");

  SteadyStatePrediction out;
  out.x_bar = qr.solve(rhs);
  if (!out.x_bar.allFinite()) throw Error(ErrorCode::kSolverFailure, "steady-state solve produced non-finite values");
  out.residual = (-lap.matrix() * out.x_bar + b_eff).cwiseAbs().maxCoeff();
  out.conserved_values.assign(conserved.data(), conserved.data() + nz);
  return out;
}

std::vector<ModeDrift> drift_rates(const ZeroEigenstructure& eig, const Vector& x0, const Vector& b_eff) {
  require_length(x0, eig.size(), "initial state");
  require_length(b_eff, eig.size(), "bias");
  std::vector<ModeDrift> out;
  out.reserve(eig.n_z);
  for (int i = 0; i < eig.n_z; ++i) {
    const auto w = eig.w0.col(i);
    out.push_back({i + 1, w.dot(b_eff), w.dot(x0)});
  }
  return out;
}

}  // namespace opinionflow
