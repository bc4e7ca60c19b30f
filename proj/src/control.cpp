#include "opinionflow/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "opinionflow/error.hpp"

namespace opinionflow {

ControlSchedule::ControlSchedule(std::vector<ControlSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw Error(ErrorCode::kValidation, "control schedule has no segments");
  if (segments_.front().t_start != 0.0) throw Error(ErrorCode::kValidation, "control schedule must start at t = 0");
  const auto n = segments_.front().u.size();
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const ControlSegment& s = segments_[k];
    if (s.u.size() != n) throw Error(ErrorCode::kDimensionMismatch, "control segments have different lengths");
    if (!s.u.allFinite()) throw Error(ErrorCode::kValidation, "control segment " + std::to_string(k) + " is not finite");
    if (!(s.t_end > s.t_start))
      throw Error(ErrorCode::kValidation, "control segment " + std::to_string(k) + " has nonpositive duration");
    const bool last = k + 1 == segments_.size();
    if (last && !std::isinf(s.t_end)) throw Error(ErrorCode::kValidation, "last control segment must be unbounded");
    if (!last && (std::isinf(s.t_end) || segments_[k + 1].t_start != s.t_end))
      throw Error(ErrorCode::kValidation, "control segments must be contiguous");
  }
}

ControlSchedule ControlSchedule::constant(Vector u) { return ControlSchedule({{0.0, kForever, std::move(u)}}); }

std::size_t ControlSchedule::segment_at(double t) const {
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k)
    if (t < segments_[k].t_end) return k;
  return segments_.size() - 1;
}

std::vector<double> ControlSchedule::switch_times() const {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < segments_.size(); ++k) out.push_back(segments_[k].t_end);
  return out;
}

ReachabilityVerdict is_reachable(const ZeroEigenstructure& eig, const Vector& x0, const Vector& x_d, double tol) {
  if (x0.size() != eig.size() || x_d.size() != eig.size())
    throw Error(ErrorCode::kDimensionMismatch, "state vectors do not match the graph size");
  const Vector gaps = eig.w0.transpose() * (x_d - x0);
  ReachabilityVerdict v;
  v.gaps.assign(gaps.data(), gaps.data() + gaps.size());
  v.reachable = (gaps.array().abs() < tol).all();
  return v;
}

Vector design_stabilizing_control(const Laplacian& lap, const Vector& x_d, const Vector& b) {
  if (x_d.size() != lap.size() || b.size() != lap.size())
    throw Error(ErrorCode::kDimensionMismatch, "target or bias does not match the graph size");
  return lap.matrix() * x_d - b;
}

ControlSchedule design_two_stage_control(const Laplacian& lap, const ZeroEigenstructure& eig, const Vector& x0,
                                         const Vector& x_d, const Vector& b, double t_bar, double tol) {
  if (!std::isfinite(t_bar) || t_bar <= 0.0)
    throw Error(ErrorCode::kInvalidHorizon, "switching time t_bar must be positive, got " + std::to_string(t_bar));
  const Vector settle = design_stabilizing_control(lap, x_d, b);
  const ReachabilityVerdict verdict = is_reachable(eig, x0, x_d, tol);
  if (verdict.reachable) return ControlSchedule::constant(settle);

  // w_j^T L x_d = 0 and w_j^T v_i = delta_ij, so w_j^T (b + u1) = alpha_j.
  const Vector alpha = Eigen::Map<const Vector>(verdict.gaps.data(), eig.n_z) / t_bar;
  Vector transport = settle + eig.v0 * alpha;
  return ControlSchedule({{0.0, t_bar, std::move(transport)}, {t_bar, kForever, settle}});
}

}  // namespace opinionflow
