#pragma once

#include <span>
#include <vector>

#include "nlpot/potential.hpp"

namespace nlpot::oracle {

/// Dense symmetric matrix in row-major storage.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, 0.0) {}

  int dim() const noexcept { return dim_; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }

  double trace() const;
  double off_diagonal_norm() const;

 private:
  int dim_;
  std::vector<double> data_;
};

struct JacobiSettings {
  double tolerance = 1e-12;  // on the off-diagonal Frobenius norm
  int max_sweeps = 100;
};

/// Eigenvalues (ascending) by cyclic Jacobi rotations.  Throws
/// Error(Solver) if the off-diagonal norm is still above tolerance after
/// max_sweeps sweeps.
std::vector<double> jacobi_eigenvalues(SymmetricMatrix a, const JacobiSettings& settings = {});

/// Galerkin truncation of L(alpha, v) in the basis
/// {1/sqrt(pi), cos 2x, sin 2x, ..., cos 2Nx, sin 2Nx}: D + alpha u u^T.
struct TruncatedOperator {
  int N = 0;
  std::vector<double> diagonal;
  std::vector<double> rank_one;
  double alpha = 0.0;

  int dim() const noexcept { return 2 * N + 1; }
  SymmetricMatrix matrix() const;
};

/// Requires N >= op.potential.order() (Error(Rejection) otherwise).
TruncatedOperator truncate(const OperatorSpec& op, int N);

struct Cluster {
  double value = 0.0;
  int multiplicity = 0;
};

/// Groups ascending values whose consecutive gaps are <= radius.
std::vector<Cluster> cluster(std::span<const double> sorted, double radius);

/// Eigenvalues of the truncation at level N, clustered at `cluster_radius`.
/// Requires N >= order + 8.
std::vector<Cluster> oracle_spectrum(const OperatorSpec& op, int N, double cluster_radius = 1e-6);

/// Sign-change scan of lambda -> Delta(alpha, lambda) on (0, lambda_max],
/// skipping 1e-3 neighbourhoods of 2Z, with bisection refinement.
std::vector<double> scan_delta_zeros(const OperatorSpec& op, double lambda_max, double grid_step);

}  // namespace nlpot::oracle
