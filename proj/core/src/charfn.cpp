#include "nlpot/charfn.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/constants/constants.hpp>

#include "nlpot/charfn_wide.hpp"
#include "nlpot/error.hpp"

namespace nlpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

template <typename C>
struct Num;

template <>
struct Num<Complex> {
  using Real = double;
  static Real pi() { return kPi; }
};

template <>
struct Num<charfn::WideComplex> {
  using Real = charfn::WideReal;
  static Real pi() { return boost::math::constants::pi<Real>(); }
};

template <typename C>
bool use_series(const C& x, const charfn::SeriesSettings& s, charfn::Path path) {
  switch (path) {
    case charfn::Path::Closed: return false;
    case charfn::Path::Series: return true;
    case charfn::Path::Automatic: break;
  }
  using std::abs;
  return abs(x) < s.singularity_radius;
}

template <typename C>
C exp_integral_t(const C& mu, const typename Num<C>::Real& length, const charfn::SeriesSettings& settings,
                 charfn::Path path) {
  using R = typename Num<C>::Real;
  const C i(R(0), R(1));
  if (use_series(mu, settings, path)) {
    // L * sum_n (-i mu L)^n / (n+1)!
    const C x = -i * mu * length;
    C term(R(1));
    C sum(R(0));
    for (int n = 0; n < settings.series_terms; ++n) {
      term /= R(n + 1);
      sum += term;
      term *= x;
    }
    return length * sum;
  }
  using std::exp;
  using std::sin;
  const C half = R(0.5) * mu * length;
  return R(2) * exp(-i * half) * sin(half) / mu;
}

template <typename C>
C ramp_integral_t(const C& q, const charfn::SeriesSettings& settings, charfn::Path path) {
  using R = typename Num<C>::Real;
  const R pi = Num<C>::pi();
  const C i(R(0), R(1));
  if (use_series(q, settings, path)) {
    // sum_n (-i q)^n pi^(n+2) / (n+2)!
    const C x = -i * q * pi;
    C term(pi * pi / R(2));
    C sum(R(0));
    for (int n = 0; n < settings.series_terms; ++n) {
      sum += term;
      term *= x / R(n + 3);
    }
    return sum;
  }
  return (pi - exp_integral_t(q, pi, settings, charfn::Path::Closed)) / (i * q);
}

template <typename C>
std::vector<C> exponential_coefficients_t(const PotentialSpec& spec) {
  using R = typename Num<C>::Real;
  using std::sqrt;
  const int order = spec.order();
  const R pi = Num<C>::pi();
  const R a = sqrt(R(2) / pi) / R(2);
  std::vector<C> b(static_cast<std::size_t>(2 * order + 1), C(R(0)));
  b[static_cast<std::size_t>(order)] = C(R(spec.c0()) / sqrt(pi));
  for (const auto& t : spec.terms()) {
    b[static_cast<std::size_t>(order + t.k)] = a * C(R(t.c), R(-t.s));
    b[static_cast<std::size_t>(order - t.k)] = a * C(R(t.c), R(t.s));
  }
  return b;
}

template <typename C>
C vtilde_t(const std::vector<C>& coeffs, const C& lambda, const charfn::SeriesSettings& settings) {
  using R = typename Num<C>::Real;
  const int order = static_cast<int>(coeffs.size() / 2);
  const R pi = Num<C>::pi();
  C sum(R(0));
  for (int m = -order; m <= order; ++m) {
    const C& b = coeffs[static_cast<std::size_t>(m + order)];
    if (b == C(R(0))) continue;
    sum += b * exp_integral_t(C(lambda - R(2.0 * m)), pi, settings, charfn::Path::Automatic);
  }
  return sum;
}

// Phi = sum_{m,n} b_m b_n int_0^pi e^{i(2n - lambda)x} int_0^x e^{i(lambda + 2m)t} dt dx.
// With q = lambda + 2m and N = m + n the inner double integral is
//   N == 0: int_0^pi (pi - s) e^{-iqs} ds
//   N != 0: i E(q - 2N) / q  ==  i E(q) / (q - 2N)
// where E(mu) = int_0^pi e^{-i mu x} dx.  The N != 0 form with the larger
// denominator is used; |q| + |q - 2N| >= 2 keeps it away from zero.
template <typename C>
C phi_t(const std::vector<C>& coeffs, const C& lambda, const charfn::SeriesSettings& settings) {
  using R = typename Num<C>::Real;
  using std::abs;
  const int order = static_cast<int>(coeffs.size() / 2);
  const R pi = Num<C>::pi();
  const C i(R(0), R(1));
  const auto path = charfn::Path::Automatic;
  C sum(R(0));
  for (int m = -order; m <= order; ++m) {
    const C& bm = coeffs[static_cast<std::size_t>(m + order)];
    if (bm == C(R(0))) continue;
    const C q = lambda + R(2.0 * m);
    for (int n = -order; n <= order; ++n) {
      const C& bn = coeffs[static_cast<std::size_t>(n + order)];
      if (bn == C(R(0))) continue;
      const int total = m + n;
      C inner;
      if (total == 0) {
        inner = ramp_integral_t(q, settings, path);
      } else {
        const C shifted = q - R(2.0 * total);
        if (abs(q) >= abs(shifted))
          inner = i * exp_integral_t(shifted, pi, settings, path) / q;
        else
          inner = i * exp_integral_t(q, pi, settings, path) / shifted;
      }
      sum += bm * bn * inner;
    }
  }
  return sum;
}

// Wide evaluation keeps the default radius and extends the series to
// match 50 digits.
charfn::SeriesSettings wide_settings() { return {1e-4, 16}; }

}  // namespace

namespace charfn {

Complex exp_integral(Complex mu, double length, const SeriesSettings& settings, Path path) {
  return exp_integral_t(mu, length, settings, path);
}

Complex ramp_integral(Complex q, const SeriesSettings& settings, Path path) {
  return ramp_integral_t(q, settings, path);
}

std::vector<Complex> exponential_coefficients(const PotentialSpec& spec) {
  return exponential_coefficients_t<Complex>(spec);
}

Complex vtilde(const PotentialSpec& spec, Complex lambda, const SeriesSettings& settings) {
  return CharfnContext(OperatorSpec{0.0, spec}, settings).vtilde(lambda);
}

Complex phi(const PotentialSpec& spec, Complex lambda, const SeriesSettings& settings) {
  return CharfnContext(OperatorSpec{0.0, spec}, settings).phi(lambda);
}

WideComplex vtilde_wide(const PotentialSpec& spec, const WideComplex& lambda) {
  return vtilde_t(exponential_coefficients_t<WideComplex>(spec), lambda, wide_settings());
}

WideComplex phi_wide(const PotentialSpec& spec, const WideComplex& lambda) {
  return phi_t(exponential_coefficients_t<WideComplex>(spec), lambda, wide_settings());
}

Complex delta0(Complex lambda) { return 2.0 * (1.0 - std::cos(lambda * kPi)); }

double q_secular(double alpha, const std::map<int, double>& level_weights, double z) {
  double sum = 0.0;
  for (const auto& [k, w] : level_weights) {
    if (!(w > kWeightFloor)) continue;
    const double pole = l0::level(k);
    if (z == pole) throw Error(ErrorKind::Pole, "secular function evaluated at active pole z = " +
                                                    std::to_string(pole));
    sum += w / (pole - z);
  }
  return 1.0 + alpha * sum;
}

}  // namespace charfn

CharfnContext::CharfnContext(OperatorSpec op, charfn::SeriesSettings settings)
    : op_(std::move(op)),
      settings_(settings),
      coeffs_(charfn::exponential_coefficients(op_.potential)) {
  if (!(settings_.singularity_radius > 0.0))
    throw Error(ErrorKind::Rejection, "singularity radius must be positive");
  if (settings_.series_terms < 4) throw Error(ErrorKind::Rejection, "series_terms must be >= 4");
  if (!std::isfinite(op_.alpha)) throw Error(ErrorKind::Rejection, "alpha is not finite");
}

Complex CharfnContext::vtilde_impl(Complex lambda) const { return vtilde_t(coeffs_, lambda, settings_); }

Complex CharfnContext::phi_impl(Complex lambda) const { return phi_t(coeffs_, lambda, settings_); }

Complex CharfnContext::vtilde(Complex lambda) const { return vtilde_impl(lambda); }

Complex CharfnContext::vtilde_star(Complex lambda) const {
  return std::conj(vtilde_impl(std::conj(lambda)));
}

Complex CharfnContext::phi(Complex lambda) const { return phi_impl(lambda); }

Complex CharfnContext::phi_star(Complex lambda) const {
  return std::conj(phi_impl(std::conj(lambda)));
}

Complex CharfnContext::r(Complex lambda) const {
  const Complex ep = std::exp(kI * lambda * kPi);
  const Complex em = std::exp(-kI * lambda * kPi);
  return (1.0 - em) * (phi(lambda) * (1.0 - ep) - vtilde(lambda) * vtilde_star(lambda));
}

Complex CharfnContext::delta(Complex lambda, charfn::Path path) const {
  const Complex base = charfn::delta0(lambda);
  if (op_.alpha == 0.0) return base;
  if (!use_series(lambda, settings_, path)) {
    return base + op_.alpha / (2.0 * kI * lambda) * (r(lambda) - r(-lambda));
  }
  // R(lambda) = i lambda E(lambda) B(lambda) with
  // B(lambda) = Phi(lambda)(1 - e^{i lambda pi}) - vtilde(lambda) vtilde*(lambda),
  // so the odd quotient is (E(lambda) B(lambda) + E(-lambda) B(-lambda)) / 2.
  auto b = [this](Complex l) {
    return phi(l) * (1.0 - std::exp(kI * l * kPi)) - vtilde(l) * vtilde_star(l);
  };
  const charfn::SeriesSettings forced = settings_;
  const Complex e_plus = charfn::exp_integral(lambda, kPi, forced, charfn::Path::Series);
  const Complex e_minus = charfn::exp_integral(-lambda, kPi, forced, charfn::Path::Series);
  return base + 0.5 * op_.alpha * (e_plus * b(lambda) + e_minus * b(-lambda));
}

Complex CharfnContext::delta_at(double z) const {
  const Complex lambda = z >= 0.0 ? Complex(std::sqrt(z), 0.0) : Complex(0.0, std::sqrt(-z));
  return delta(lambda);
}

}  // namespace nlpot
