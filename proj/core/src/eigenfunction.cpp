#include "nlpot/eigenfunction.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlpot/error.hpp"
#include "nlpot/quadrature.hpp"

namespace nlpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double trig_derivative(const PotentialSpec& f, double x) {
  const double a = std::sqrt(2.0 / kPi);
  double d = 0.0;
  for (const auto& t : f.terms()) {
    const double w = 2.0 * t.k;
    d += a * w * (t.s * std::cos(w * x) - t.c * std::sin(w * x));
  }
  return d;
}

// Pieces of the closed-form eigenfunction for sign s = +1/-1:
//   first  = int_0^x e^{i s lambda (pi/2 - x + t)} v(t) dt
//   second = int_x^pi e^{i s lambda (pi/2 - t + x)} v(t) dt
struct Pieces {
  Complex first;
  Complex second;
};

Pieces pieces(const std::vector<Complex>& b, Complex lambda, double s, double x) {
  const int order = static_cast<int>(b.size() / 2);
  const Complex sl = s * lambda;
  Complex first = 0.0;
  Complex second = 0.0;
  for (int m = -order; m <= order; ++m) {
    const Complex bm = b[static_cast<std::size_t>(m + order)];
    if (bm == Complex{}) continue;
    // int_0^x e^{i(sl + 2m)t} dt
    first += bm * charfn::exp_integral(-(sl + 2.0 * m), x);
    // e^{i sl (pi/2 + x)} int_x^pi e^{i(2m - sl)t} dt = e^{i sl pi/2} e^{2imx} E_{pi-x}(sl - 2m)
    second += bm * std::exp(Complex(0.0, 2.0 * m * x)) * charfn::exp_integral(sl - 2.0 * m, kPi - x);
  }
  return {std::exp(kI * sl * (kPi / 2.0 - x)) * first, std::exp(kI * sl * (kPi / 2.0)) * second};
}

}  // namespace

EigenMode EigenMode::trigonometric(PotentialSpec series) {
  EigenMode mode;
  mode.series_ = std::move(series);
  return mode;
}

EigenMode EigenMode::secular(Complex lambda, const PotentialSpec& v) {
  EigenMode mode;
  mode.secular_ = true;
  mode.lambda_ = lambda;
  mode.series_ = v;
  mode.coeffs_ = charfn::exponential_coefficients(v);
  return mode;
}

double EigenMode::value(double x) const {
  if (!(x >= 0.0 && x <= kPi)) throw Error(ErrorKind::Rejection, "evaluation point outside [0, pi]");
  if (!secular_) return scale_ * series_.evaluate(x);
  const Pieces plus = pieces(coeffs_, lambda_, 1.0, x);
  const Pieces minus = pieces(coeffs_, lambda_, -1.0, x);
  return scale_ * (0.5 * (plus.first + plus.second + minus.first + minus.second)).real();
}

double EigenMode::derivative(double x) const {
  if (!(x >= 0.0 && x <= kPi)) throw Error(ErrorKind::Rejection, "evaluation point outside [0, pi]");
  if (!secular_) return scale_ * trig_derivative(series_, x);
  // u' = lambda [int_0^x sin(...) v - int_x^pi sin(...) v]; the boundary
  // terms cos(lambda pi/2) v(x) cancel.
  const Pieces plus = pieces(coeffs_, lambda_, 1.0, x);
  const Pieces minus = pieces(coeffs_, lambda_, -1.0, x);
  const Complex sum = (plus.first - plus.second) - (minus.first - minus.second);
  return scale_ * (lambda_ * sum / (2.0 * kI)).real();
}

double EigenMode::norm() const {
  if (!secular_) return std::abs(scale_) * std::sqrt(series_.norm2());
  const double n2 = quadrature::integrate(
      [this](double x) {
        const double u = value(x);
        return u * u;
      },
      0.0, kPi);
  return std::sqrt(n2);
}

EigenMode EigenMode::scaled(double factor) const {
  EigenMode out = *this;
  out.scale_ *= factor;
  return out;
}

Eigenfunction eigenfunction(const OperatorSpec& op, const SpectralEntry& entry, bool normalize) {
  const WeightTable table = weight_table(op);
  const PotentialSpec& v = op.potential;
  const int k = l0::level_index(entry.z, kCoincidenceTol);
  const bool perturbed = op.alpha != 0.0 && !table.weights.empty();
  auto reject = [&](const std::string& why) {
    throw Error(ErrorKind::Rejection, "entry z = " + std::to_string(entry.z) + " " + why);
  };
  auto on_secular_zero = [&](double z) {
    if (!perturbed) return false;
    double q = 1.0;
    double slope = 0.0;
    for (const auto& [level, x] : table.weights) {
      const double d = l0::level(level) - z;
      if (d == 0.0) return false;
      q += x / d;
      slope += std::abs(x) / (d * d);
    }
    return std::abs(q) <= 1e-9 * (1.0 + std::max(1.0, std::abs(z)) * slope);
  };

  Eigenfunction out;
  out.z = entry.z;
  out.lambda = entry.z >= 0.0 ? Complex(std::sqrt(entry.z), 0.0) : Complex(0.0, std::sqrt(-entry.z));
  out.level = k;

  auto level_basis = [&](int level) {
    if (level == 0) {
      out.basis.push_back(EigenMode::trigonometric(PotentialSpec(1.0, {})));
      return;
    }
    out.basis.push_back(EigenMode::trigonometric(PotentialSpec(0.0, {{level, 1.0, 0.0}})));
    out.basis.push_back(EigenMode::trigonometric(PotentialSpec(0.0, {{level, 0.0, 1.0}})));
  };

  switch (entry.tag) {
    case SpectralTag::Sigma2:
      if (k >= 0 || !on_secular_zero(entry.z)) reject("is not a secular eigenvalue");
      out.kind = EigenfunctionKind::Secular;
      out.basis.push_back(EigenMode::secular(out.lambda, v));
      break;
    case SpectralTag::Sigma1: {
      if (k < 1 || !perturbed || !table.is_active(k)) reject("is not a Sigma1 level");
      const auto [c, s] = v.coefficients(k);
      const double n = std::hypot(c, s);
      out.kind = EigenfunctionKind::Sigma1;
      out.basis.push_back(EigenMode::trigonometric(PotentialSpec(0.0, {{k, s / n, -c / n}})));
      break;
    }
    case SpectralTag::Sigma0:
      if (k < 0 || (perturbed && table.is_active(k))) reject("is not an untouched level");
      out.kind = EigenfunctionKind::Sigma0Basis;
      level_basis(k);
      break;
    case SpectralTag::Sigma0CapSigma2: {
      if (k < 0 || table.is_active(k) || !on_secular_zero(entry.z)) reject("is not a coincidence");
      out.kind = EigenfunctionKind::Sigma0Basis;
      level_basis(k);
      // The closed form vanishes on 2Z; use the resolvent vector instead.
      double c0 = 0.0;
      std::vector<FourierTerm> terms;
      for (const auto& [level, x] : table.weights) {
        const double d = l0::level(level) - entry.z;
        const auto [c, s] = v.coefficients(level);
        if (level == 0)
          c0 = c / d;
        else
          terms.push_back({level, c / d, s / d});
      }
      out.basis.push_back(EigenMode::trigonometric(PotentialSpec(c0, std::move(terms))));
      break;
    }
  }

  if (normalize)
    for (auto& mode : out.basis) mode = mode.scaled(1.0 / mode.norm());
  return out;
}

}  // namespace nlpot
