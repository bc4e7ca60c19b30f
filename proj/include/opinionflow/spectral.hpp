#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "opinionflow/graph.hpp"
#include "opinionflow/types.hpp"

namespace opinionflow {

struct Spectrum {
  /// Eigenvalues of -L, zeros first, then by decreasing real part, then by
  /// imaginary part.
  std::vector<std::complex<double>> eigenvalues;
  int zero_multiplicity = 0;

  /// Nonzero eigenvalue with the largest (least negative) real part; it sets
  /// the slowest decay rate of the non-conserved modes. Empty when L = 0.
  std::optional<std::complex<double>> slowest_nonzero() const;
};

/// An eigenvalue of -L counts as zero when |sigma| < zero_tol * max(1, |L|_inf).
/// Throws Error(kEigensolverFailure) if the QR iteration does not converge.
Spectrum spectrum(const Laplacian& lap, double zero_tol = kDefaultZeroTol);

// Right and left null-space bases of L, biorthogonalized so that
// W0^T V0 = I. With a simple zero eigenvalue V0 is the all-ones column and
// W0 sums to one.
struct ZeroEigenstructure {
  int n_z = 0;
  Matrix v0;  // n x n_z
  Matrix w0;  // n x n_z

  int size() const noexcept { return static_cast<int>(v0.rows()); }
};

/// Extracts the zero eigenspace from one SVD of L. Singular values below
/// zero_tol * max(1, |L|_inf) are treated as zero. Throws
/// Error(kDegenerateNullSpace) when W0_raw^T V0 is singular.
ZeroEigenstructure zero_eigenstructure(const Laplacian& lap,
                                       double zero_tol = kDefaultZeroTol);

/// Dimension of the numerical null space of `m` (same threshold rule).
int null_space_dimension(const Matrix& m, double zero_tol = kDefaultZeroTol);

}  // namespace opinionflow
