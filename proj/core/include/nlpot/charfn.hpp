#pragma once

#include <complex>
#include <map>
#include <vector>

#include "nlpot/potential.hpp"

namespace nlpot {

using Complex = std::complex<double>;

/// Squared level norms at or below this value count as inactive.
inline constexpr double kWeightFloor = 1e-13;

namespace charfn {

/// Switch between closed forms and Taylor series near removable
/// singularities.  Closed forms are used at distance >= radius.
struct SeriesSettings {
  double singularity_radius = 1e-4;
  int series_terms = 8;
};

enum class Path { Automatic, Closed, Series };

/// int_0^length exp(-i mu x) dx.  Entire in mu; the closed form
/// 2 exp(-i mu L/2) sin(mu L/2) / mu is replaced by its Taylor series for
/// |mu| < singularity_radius.
Complex exp_integral(Complex mu, double length, const SeriesSettings& settings = {},
                     Path path = Path::Automatic);

/// int_0^pi (pi - s) exp(-i q s) ds, closed form (pi - E(q)) / (i q).
Complex ramp_integral(Complex q, const SeriesSettings& settings = {}, Path path = Path::Automatic);

/// Coefficients b_m (m = -K..K) with v(x) = sum_m b_m exp(2 i m x).
/// Index m + K.
std::vector<Complex> exponential_coefficients(const PotentialSpec& spec);

/// Fourier transform int_0^pi exp(-i lambda x) v(x) dx.
Complex vtilde(const PotentialSpec& spec, Complex lambda, const SeriesSettings& settings = {});

/// Transform of the autocorrelation g(x) = int_x^pi v(t - x) v(t) dt.
Complex phi(const PotentialSpec& spec, Complex lambda, const SeriesSettings& settings = {});

/// Characteristic function of L0: 2 (1 - cos(lambda pi)).
Complex delta0(Complex lambda);

/// Secular function Q(z) = 1 + alpha sum_k w_k / (4k^2 - z) over levels with
/// w_k > kWeightFloor.  Throws Error(Pole) when z is an active pole.
double q_secular(double alpha, const std::map<int, double>& level_weights, double z);

/// Star conjugation f*(lambda) = conj(f(conj(lambda))).
template <typename F>
Complex star(F&& f, Complex lambda) {
  return std::conj(f(std::conj(lambda)));
}

}  // namespace charfn

/// Evaluates the transforms and the characteristic function Delta(alpha, .)
/// of a fixed operator.  Immutable after construction.
class CharfnContext {
 public:
  explicit CharfnContext(OperatorSpec op, charfn::SeriesSettings settings = {});

  const OperatorSpec& op() const noexcept { return op_; }
  const charfn::SeriesSettings& settings() const noexcept { return settings_; }

  Complex vtilde(Complex lambda) const;
  Complex vtilde_star(Complex lambda) const;
  Complex phi(Complex lambda) const;
  Complex phi_star(Complex lambda) const;

  /// R(lambda) = (1 - e^{-i lambda pi}) (Phi (1 - e^{i lambda pi}) - vtilde vtilde*).
  Complex r(Complex lambda) const;

  /// Delta(alpha, lambda) = Delta(0, lambda) + alpha/(2 i lambda) (R(lambda) - R(-lambda)).
  /// Near lambda = 0 the quotient is evaluated with the 1/lambda factor
  /// cancelled analytically.
  Complex delta(Complex lambda, charfn::Path path = charfn::Path::Automatic) const;

  /// Delta on the real axis (where it is real).
  double delta_real(double lambda) const { return delta(Complex(lambda, 0.0)).real(); }

  /// Delta at spectral parameter z = lambda^2 (principal root; imaginary for z < 0).
  Complex delta_at(double z) const;

 private:
  Complex vtilde_impl(Complex lambda) const;
  Complex phi_impl(Complex lambda) const;

  OperatorSpec op_;
  charfn::SeriesSettings settings_;
  std::vector<Complex> coeffs_;
};

}  // namespace nlpot
