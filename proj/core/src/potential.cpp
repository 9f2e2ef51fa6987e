#include "nlpot/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nlpot/error.hpp"

namespace nlpot {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);
const double kSqrt2OverPi = std::sqrt(2.0 / kPi);

}  // namespace

PotentialSpec::PotentialSpec(double c0, std::vector<FourierTerm> terms)
    : c0_(c0), terms_(std::move(terms)) {
  if (!std::isfinite(c0_)) throw Error(ErrorKind::Rejection, "c0 is not finite");
  std::sort(terms_.begin(), terms_.end(),
            [](const FourierTerm& a, const FourierTerm& b) { return a.k < b.k; });
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    if (t.k < 1) throw Error(ErrorKind::Rejection, "level k must be >= 1, got " + std::to_string(t.k));
    if (i > 0 && terms_[i - 1].k == t.k)
      throw Error(ErrorKind::Rejection, "duplicate level k = " + std::to_string(t.k));
    if (!std::isfinite(t.c) || !std::isfinite(t.s))
      throw Error(ErrorKind::Rejection, "non-finite coefficient at k = " + std::to_string(t.k));
  }
  order_ = terms_.empty() ? 0 : terms_.back().k;
}

PotentialSpec PotentialSpec::build(double c0, std::vector<FourierTerm> terms, bool normalize) {
  PotentialSpec spec(c0, std::move(terms));
  if (!normalize) return spec;
  const double n2 = spec.norm2();
  if (!(n2 > 0.0)) throw Error(ErrorKind::Rejection, "cannot normalize the zero potential");
  const double scale = 1.0 / std::sqrt(n2);
  spec.c0_ *= scale;
  for (auto& t : spec.terms_) {
    t.c *= scale;
    t.s *= scale;
  }
  return spec;
}

std::pair<double, double> PotentialSpec::coefficients(int k) const noexcept {
  if (k == 0) return {c0_, 0.0};
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const FourierTerm& t, int key) { return t.k < key; });
  if (it == terms_.end() || it->k != k) return {0.0, 0.0};
  return {it->c, it->s};
}

double PotentialSpec::level_weight(int k) const noexcept {
  const auto [c, s] = coefficients(k);
  return c * c + s * s;
}

double PotentialSpec::norm2() const noexcept {
  double sum = c0_ * c0_;
  for (const auto& t : terms_) sum += t.c * t.c + t.s * t.s;
  return sum;
}

double PotentialSpec::evaluate(double x) const {
  if (!(x >= 0.0 && x <= kPi))
    throw Error(ErrorKind::Rejection, "evaluation point outside [0, pi]");
  double value = c0_ * kInvSqrtPi;
  for (const auto& t : terms_) {
    const double arg = 2.0 * t.k * x;
    value += kSqrt2OverPi * (t.c * std::cos(arg) + t.s * std::sin(arg));
  }
  return value;
}

PotentialSpec PotentialSpec::padded(int order) const {
  std::vector<FourierTerm> out;
  out.reserve(static_cast<std::size_t>(std::max(order, order_)));
  for (int k = 1; k <= std::max(order, order_); ++k) {
    const auto [c, s] = coefficients(k);
    out.push_back({k, c, s});
  }
  return PotentialSpec(c0_, std::move(out));
}

bool OperatorSpec::normalized(double tol) const noexcept {
  return std::abs(potential.norm2() - 1.0) <= tol;
}

namespace l0 {

int max_level(double window) noexcept {
  if (window < 0.0) return -1;
  int k = static_cast<int>(std::floor(std::sqrt(window / 4.0)));
  while (level(k + 1) <= window) ++k;
  while (k > 0 && level(k) > window) --k;
  return k;
}

int level_index(double z, double tol) noexcept {
  if (z < -tol) return -1;
  const int k = static_cast<int>(std::lround(std::sqrt(std::max(z, 0.0) / 4.0)));
  return std::abs(z - level(k)) <= tol ? k : -1;
}

}  // namespace l0

namespace probe {

double linear_sine(int k) noexcept { return -std::sqrt(kPi / 2.0) / k; }
double quadratic_cosine(int k) noexcept { return std::sqrt(kPi / 2.0) / (double(k) * k); }
double quadratic_constant() noexcept { return std::pow(kPi, 2.5) / 12.0; }

}  // namespace probe

Companions companions(const PotentialSpec& spec, int order) {
  if (order < spec.order())
    throw Error(ErrorKind::Rejection, "companion order " + std::to_string(order) +
                                          " below potential order " + std::to_string(spec.order()));
  std::vector<FourierTerm> shifted;
  std::vector<FourierTerm> squared;
  shifted.reserve(static_cast<std::size_t>(order));
  squared.reserve(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) {
    const auto [c, s] = spec.coefficients(k);
    shifted.push_back({k, c, s + probe::linear_sine(k)});
    squared.push_back({k, c + probe::quadratic_cosine(k), s});
  }
  return {PotentialSpec(spec.c0(), std::move(shifted)),
          PotentialSpec(spec.c0() + probe::quadratic_constant(), std::move(squared))};
}

}  // namespace nlpot
