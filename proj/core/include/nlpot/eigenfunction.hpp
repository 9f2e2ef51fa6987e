#pragma once

#include <vector>

#include "nlpot/charfn.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/spectrum.hpp"

namespace nlpot {

/// One basis function of an eigenspace.  Either a finite trigonometric
/// series in the periodic basis, or the closed-form solution
///
///   u(lambda, x) = int_0^x cos lambda(pi/2 - x + t) v(t) dt
///                + int_x^pi cos lambda(pi/2 - t + x) v(t) dt
///
/// attached to a zero lambda of Delta(alpha, .) away from 2Z.
class EigenMode {
 public:
  static EigenMode trigonometric(PotentialSpec series);
  static EigenMode secular(Complex lambda, const PotentialSpec& v);

  double value(double x) const;
  double derivative(double x) const;

  /// L2(0, pi) norm (exact for trigonometric modes, quadrature otherwise).
  double norm() const;
  EigenMode scaled(double factor) const;

  bool is_secular() const noexcept { return secular_; }
  Complex lambda() const noexcept { return lambda_; }

 private:
  EigenMode() = default;

  bool secular_ = false;
  PotentialSpec series_;
  Complex lambda_{};
  std::vector<Complex> coeffs_;
  double scale_ = 1.0;
};

enum class EigenfunctionKind { Secular, Sigma1, Sigma0Basis };

/// Eigenspace basis for one classified spectral entry.
struct Eigenfunction {
  EigenfunctionKind kind = EigenfunctionKind::Secular;
  double z = 0.0;
  Complex lambda{};   // sqrt(z), principal branch
  int level = -1;     // k for entries sitting on 4k^2
  std::vector<EigenMode> basis;
};

/// Builds the eigenspace of `entry`.  Sigma2 entries use the closed form
/// above; Sigma1 entries the direction in G_k orthogonal to v_k; Sigma0
/// entries the basis of G_k; coincidences G_k plus the resolvent vector
/// sum_j v_j / (4j^2 - z).  Throws Error(Rejection) when the entry does not
/// belong to the spectrum of `op`.  With `normalize` every basis function
/// has unit L2 norm.
Eigenfunction eigenfunction(const OperatorSpec& op, const SpectralEntry& entry,
                            bool normalize = false);

}  // namespace nlpot
