#pragma once

#include <span>
#include <utility>
#include <vector>

namespace nlpot {

/// One Fourier level of a potential: coefficients of sqrt(2/pi) cos 2kx and
/// sqrt(2/pi) sin 2kx.
struct FourierTerm {
  int k = 1;
  double c = 0.0;
  double s = 0.0;

  friend bool operator==(const FourierTerm&, const FourierTerm&) = default;
};

/// A real potential on [0, pi] written as a finite series in the periodic
/// eigenbasis {1/sqrt(pi), sqrt(2/pi) cos 2kx, sqrt(2/pi) sin 2kx}.
///
/// Terms are kept sorted by level and every level appears at most once.
/// `order()` is the highest level present (0 for a constant potential).
class PotentialSpec {
 public:
  PotentialSpec() = default;

  /// Throws Error(Rejection) on duplicate or non-positive levels.
  PotentialSpec(double c0, std::vector<FourierTerm> terms);

  /// Builds a spec, optionally scaled to unit L2 norm.  Normalizing an
  /// all-zero potential is rejected.
  static PotentialSpec build(double c0, std::vector<FourierTerm> terms, bool normalize);

  double c0() const noexcept { return c0_; }
  std::span<const FourierTerm> terms() const noexcept { return terms_; }
  int order() const noexcept { return order_; }

  /// Coefficients at level k (zero when the level is absent).  Level 0
  /// reports (c0, 0).
  std::pair<double, double> coefficients(int k) const noexcept;

  /// ||v_k||^2: squared norm of the projection onto the level-k eigenspace.
  double level_weight(int k) const noexcept;

  /// ||v||^2 computed exactly from the coefficients.
  double norm2() const noexcept;

  /// v(x) for x in [0, pi]; throws Error(Rejection) outside.
  double evaluate(double x) const;

  /// Returns the same function truncated/padded to include levels 1..order
  /// explicitly (absent levels become zero terms).
  PotentialSpec padded(int order) const;

  friend bool operator==(const PotentialSpec&, const PotentialSpec&) = default;

 private:
  double c0_ = 0.0;
  std::vector<FourierTerm> terms_;
  int order_ = 0;
};

/// The operator L(alpha, v) = L0 + alpha <., v> v with periodic conditions.
struct OperatorSpec {
  double alpha = 0.0;
  PotentialSpec potential;

  bool normalized(double tol = 1e-12) const noexcept;
};

/// Spectrum of the unperturbed operator: z_k = 4k^2 with multiplicity 1 at
/// k = 0 and 2 for k >= 1.
namespace l0 {

constexpr double level(int k) noexcept { return 4.0 * k * k; }
constexpr int multiplicity(int k) noexcept { return k == 0 ? 1 : 2; }

/// Largest k with 4k^2 <= window (-1 when window < 0).
int max_level(double window) noexcept;

/// Returns k if z equals 4k^2 within `tol`, otherwise -1.
int level_index(double z, double tol) noexcept;

}  // namespace l0

/// Companion potentials used by the three-spectra reconstruction:
///   w   = v + (x - pi/2)
///   w^  = v + (x - pi/2)^2
/// with the probe functions truncated at level `order`.
struct Companions {
  PotentialSpec shifted;  // w
  PotentialSpec squared;  // w^
};

/// Throws Error(Rejection) when order < spec.order().
Companions companions(const PotentialSpec& spec, int order);

/// Fourier coefficients of the probe functions.
namespace probe {

double linear_sine(int k) noexcept;      // s_k(x - pi/2)
double quadratic_cosine(int k) noexcept;  // c_k((x - pi/2)^2), k >= 1
double quadratic_constant() noexcept;     // c_0((x - pi/2)^2)

}  // namespace probe

}  // namespace nlpot
