#include "opinionflow/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "opinionflow/error.hpp"

namespace opinionflow {
namespace {

double threshold(const Matrix& m, double zero_tol) {
  return zero_tol * std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
}

}  // namespace

std::optional<std::complex<double>> Spectrum::slowest_nonzero() const {
  if (zero_multiplicity >= static_cast<int>(eigenvalues.size())) return std::nullopt;
  return eigenvalues[zero_multiplicity];
}

Spectrum spectrum(const Laplacian& lap, double zero_tol) {
  const Matrix neg = -lap.matrix();
  Eigen::EigenSolver<Matrix> solver(neg, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::kEigensolverFailure, "eigenvalue iteration did not converge");

  const double eps = threshold(lap.matrix(), zero_tol);
  Spectrum out;
  std::vector<std::complex<double>> zeros, rest;
  for (const auto& s : solver.eigenvalues()) {
    if (std::abs(s) < eps) {
      zeros.push_back(s);
    } else {
      rest.push_back(s);
    }
  }
  std::sort(rest.begin(), rest.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() < b.imag();
  });
  out.zero_multiplicity = static_cast<int>(zeros.size());
  out.eigenvalues.assign(zeros.size(), std::complex<double>(0.0, 0.0));
  out.eigenvalues.insert(out.eigenvalues.end(), rest.begin(), rest.end());
  return out;
}

int null_space_dimension(const Matrix& m, double zero_tol) {
  Eigen::BDCSVD<Matrix> svd(m);
  const double eps = threshold(m, zero_tol);
  const auto& s = svd.singularValues();
  return static_cast<int>((s.array() < eps).count()) + static_cast<int>(m.cols() - s.size());
}

ZeroEigenstructure zero_eigenstructure(const Laplacian& lap, double zero_tol) {
  const Matrix& l = lap.matrix();
  const int n = lap.size();
  Eigen::BDCSVD<Matrix> svd(l, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double eps = threshold(l, zero_tol);
  const int n_z = static_cast<int>((svd.singularValues().array() < eps).count());
  if (n_z == 0)
    throw Error(ErrorCode::kDegenerateNullSpace, "no singular value of L falls below the zero threshold");

  // Singular values come sorted descending, so the null spaces are the
  // trailing columns: V spans null(L), U spans null(L^T).
  ZeroEigenstructure z;
  z.n_z = n_z;
  z.v0 = svd.matrixV().rightCols(n_z);
  const Matrix w_raw = svd.matrixU().rightCols(n_z);

  if (n_z == 1) {
    z.v0 = Matrix::Ones(n, 1);
    const double total = w_raw.sum();
    if (!(std::abs(total) > eps))
      throw Error(ErrorCode::kDegenerateNullSpace, "left null vector is orthogonal to the ones vector");
    z.w0 = w_raw / total;
    return z;
  }

  const Matrix m = w_raw.transpose() * z.v0;
  Eigen::JacobiSVD<Matrix> msvd(m);
  const auto& ms = msvd.singularValues();
  if (!(ms(ms.size() - 1) > 1e-8 * ms(0)))
    throw Error(ErrorCode::kDegenerateNullSpace, "left and right null spaces are numerically inconsistent");
  z.w0 = w_raw * m.inverse().transpose();
  return z;
}

}  // namespace opinionflow
