#include "nlpot/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlpot/error.hpp"

namespace nlpot {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Lattice tolerance when reading levels back from spectral values.
constexpr double kLevelTol = 1e-7;

int level_of(double z) {
  const int k = l0::level_index(z, kLevelTol);
  if (k < 0) throw Error(ErrorKind::MalformedSpectrum, "active level off the 4k^2 lattice: " + std::to_string(z));
  return k;
}

// (1 - z/c), or z when c = 0.
Complex linear_factor(double c, Complex z) { return c == 0.0 ? z : 1.0 - z / c; }

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  return os.str();
}

}  // namespace

SpectralData SpectralData::from_spectrum(const ClassifiedSpectrum& spectrum) {
  SpectralData data;
  data.window = spectrum.window;
  const int top = l0::max_level(spectrum.window);
  std::vector<int> seen(static_cast<std::size_t>(std::max(top + 1, 0)), 0);
  auto fail = [](const std::string& what) { throw Error(ErrorKind::MalformedSpectrum, what); };

  for (const auto& e : spectrum.entries) {
    const int k = l0::level_index(e.z, kCoincidenceTol);
    if (k < 0) {
      if (e.multiplicity != 1) fail("off-lattice eigenvalue with multiplicity != 1: " + std::to_string(e.z));
      data.mus.push_back(e.z);
      continue;
    }
    if (k > top) fail("eigenvalue above window: " + std::to_string(e.z));
    seen[static_cast<std::size_t>(k)] = e.multiplicity;
    const int m0 = l0::multiplicity(k);
    const double z = l0::level(k);
    if (e.multiplicity == m0) continue;  // untouched
    if (e.multiplicity == m0 + 1) {
      data.mus.push_back(z);  // coincidence with an untouched level
    } else if (k > 0 && e.multiplicity == 1) {
      data.active_levels.push_back(z);
      data.sigma1_levels.push_back(z);
    } else {
      fail("impossible multiplicity " + std::to_string(e.multiplicity) + " at z = " + std::to_string(z));
    }
  }
  for (int k = 0; k <= top; ++k) {
    if (seen[static_cast<std::size_t>(k)] != 0) continue;
    if (k != 0) fail("level " + std::to_string(l0::level(k)) + " missing from spectrum");
    data.active_levels.push_back(0.0);  // an active z = 0 leaves the spectrum
  }
  std::sort(data.active_levels.begin(), data.active_levels.end());
  std::sort(data.mus.begin(), data.mus.end());
  return data;
}

InterlacingVerdict check_interlacing(const SpectralData& data) {
  InterlacingVerdict v;
  const auto& p = data.active_levels;
  const auto& mu = data.mus;
  if (p.empty() && mu.empty()) {
    v.detail = "no secular content";
    return v;
  }
  if (p.size() != mu.size()) {
    v.detail = std::to_string(mu.size()) + " secular zeros against " + std::to_string(p.size()) +
               " active levels";
    return v;
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(mu[i]) || !std::isfinite(p[i])) {
      v.detail = "non-finite value";
      return v;
    }
    if (l0::level_index(p[i], kLevelTol) < 0) {
      v.detail = "active level off the 4k^2 lattice";
      return v;
    }
    if (i > 0 && !(p[i - 1] < p[i])) {
      v.detail = "active levels not strictly increasing";
      return v;
    }
  }
  const int orientation = mu.front() > p.front() ? 1 : -1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bool ok;
    if (orientation > 0)
      ok = p[i] < mu[i] && (i + 1 == p.size() || mu[i] < p[i + 1]);
    else
      ok = mu[i] < p[i] && (i == 0 || p[i - 1] < mu[i]);
    if (!ok) {
      v.detail = "zeros {" + join(mu) + "} do not alternate with levels {" + join(p) + "}";
      return v;
    }
  }
  v.ok = true;
  v.orientation = orientation;
  return v;
}

ProductForm::ProductForm(const SpectralData& data) {
  const InterlacingVerdict verdict = check_interlacing(data);
  if (!verdict.ok) throw Error(ErrorKind::MalformedSpectrum, verdict.detail);
  poles_ = data.active_levels;
  zeros_ = data.mus;
  orientation_ = verdict.orientation;
  // F(iy) = A g(iy) with g(iy) = 1/A + c/(iy) + O(1/y^2); one Richardson step
  // removes the 1/y term.
  constexpr double y = 1e8;
  const Complex g1 = unnormalized(Complex(0.0, y));
  const Complex g2 = unnormalized(Complex(0.0, 2.0 * y));
  a_ = 1.0 / (2.0 * g2 - g1).real();
}

Complex ProductForm::unnormalized(Complex z) const {
  // Zeros and poles are paired so the running product stays O(1).
  Complex prod = 1.0 / kPi2;
  for (std::size_t i = 0; i < poles_.size(); ++i)
    prod *= linear_factor(zeros_[i], z) / linear_factor(poles_[i], z);
  return prod;
}

double ProductForm::residue(std::size_t p) const {
  const double zp = poles_.at(p);
  // (z_p - z) / (1 - z/z_p) = z_p, and (0 - z) / z = -1.
  double prod = (zp == 0.0 ? -1.0 : zp) / kPi2;
  for (std::size_t i = 0; i < poles_.size(); ++i) {
    prod *= linear_factor(zeros_[i], zp).real();
    if (i != p) prod /= linear_factor(poles_[i], zp).real();
  }
  return a_ * prod;
}

WeightTable weights_from_spectrum(const SpectralData& data) {
  if (data.empty()) throw Error(ErrorKind::Degenerate, "spectral data carries no perturbation");
  const ProductForm form(data);
  WeightTable table;
  table.orientation = form.orientation();
  for (std::size_t p = 0; p < form.poles().size(); ++p)
    table.weights[level_of(form.poles()[p])] = form.residue(p);
  return table;
}

AlphaAndNorms alpha_and_norms(const WeightTable& table) {
  AlphaAndNorms out;
  out.alpha = table.total();
  if (out.alpha == 0.0 || !std::isfinite(out.alpha))
    throw Error(ErrorKind::Degenerate, "sum of weights vanishes; alpha undetermined");
  if (table.orientation != 0 && (out.alpha > 0.0) != (table.orientation > 0))
    throw Error(ErrorKind::Inconsistent, "sign of alpha disagrees with the interlacing orientation");
  for (const auto& [k, x] : table.weights) out.norms[k] = x / out.alpha;
  return out;
}

WeightTable weights_via_delta_derivative(const OperatorSpec& op) {
  const CharfnContext ctx(op);
  WeightTable table;
  table.alpha = op.alpha;
  table.weights[0] = -ctx.delta_real(0.0) / kPi2;
  constexpr double h = 1e-6;
  for (int p = 1; p <= op.potential.order(); ++p) {
    const double at = 2.0 * p;
    auto central = [&](double step) {
      return (ctx.delta_real(at + step) - ctx.delta_real(at - step)) / (2.0 * step);
    };
    const double derivative = (4.0 * central(0.5 * h) - central(h)) / 3.0;
    table.weights[p] = -(4.0 * p / kPi2) * derivative;
  }
  if (op.alpha > 0.0) table.orientation = 1;
  if (op.alpha < 0.0) table.orientation = -1;
  return table;
}

ThreeSpectra forward_three_spectra(const OperatorSpec& op, int order, int companion_order) {
  if (order < 0 || order > companion_order)
    throw Error(ErrorKind::Rejection, "reconstruction order must lie in [0, companion order]");
  const Companions comp = companions(op.potential, companion_order);
  const double window = l0::level(companion_order + 1);
  ThreeSpectra out;
  out.order = order;
  out.base = SpectralData::from_spectrum(classify_spectrum(op, window));
  out.shifted = SpectralData::from_spectrum(classify_spectrum({op.alpha, comp.shifted}, window));
  out.squared = SpectralData::from_spectrum(classify_spectrum({op.alpha, comp.squared}, window));
  return out;
}

Reconstruction invert_three_spectra(const ThreeSpectra& spectra) {
  const int order = spectra.order;
  if (order < 0) throw Error(ErrorKind::Rejection, "negative reconstruction order");
  const double needed = l0::level(order + 1);
  for (const auto* d : {&spectra.base, &spectra.shifted, &spectra.squared})
    if (d->window < needed)
      throw Error(ErrorKind::Rejection, "spectral window below 4(K+1)^2 = " + std::to_string(needed));

  const WeightTable base = weights_from_spectrum(spectra.base);
  const WeightTable shifted = weights_from_spectrum(spectra.shifted);
  const WeightTable squared = weights_from_spectrum(spectra.squared);
  const AlphaAndNorms an = alpha_and_norms(base);
  const double alpha = an.alpha;
  for (const auto* t : {&shifted, &squared})
    if ((t->orientation > 0) != (alpha > 0.0))
      throw Error(ErrorKind::Inconsistent, "companion spectra disagree on the sign of alpha");

  auto norm_of = [alpha](const WeightTable& t, int k) {
    auto it = t.weights.find(k);
    return it == t.weights.end() ? 0.0 : it->second / alpha;
  };

  Reconstruction out;
  out.alpha = alpha;
  const double root2pi = std::sqrt(2.0 * kPi);

  const double v0 = norm_of(base, 0);
  const double c0 = 6.0 / std::pow(kPi, 2.5) * (norm_of(squared, 0) - v0 - std::pow(kPi, 5) / 144.0);
  out.residuals[0] = std::abs(c0 * c0 - v0);

  std::vector<FourierTerm> terms;
  for (int k = 1; k <= order; ++k) {
    const double kk = k;
    const double vk = norm_of(base, k);
    const double s = kk / root2pi * (vk - norm_of(shifted, k) + kPi / (2.0 * kk * kk));
    const double c = kk * kk / root2pi * (norm_of(squared, k) - vk - kPi / (2.0 * kk * kk * kk * kk));
    out.residuals[k] = std::abs(c * c + s * s - vk);
    terms.push_back({k, c, s});
  }
  for (const auto& [k, x] : an.norms)
    if (k > order) out.tail_weight += x;

  for (const auto& [k, r] : out.residuals)
    if (!(r <= kConsistencyTol))
      throw Error(ErrorKind::Inconsistent, "level " + std::to_string(k) +
                                               " violates c_k^2 + s_k^2 = ||v_k||^2 (residual " +
                                               std::to_string(r) + ")");
  // Drop levels that reconstruct to exact zeros so the order reflects content.
  std::erase_if(terms, [](const FourierTerm& t) { return t.c == 0.0 && t.s == 0.0; });
  out.potential = PotentialSpec(c0, std::move(terms));
  return out;
}

std::map<int, std::pair<double, double>> magnitudes_from_two_spectra(const SpectralData& plus,
                                                                     const SpectralData& minus) {
  std::map<int, std::pair<double, double>> out;
  if (!plus.empty())
    for (const auto& [k, x] : weights_from_spectrum(plus).weights) out[k].first = x;
  if (!minus.empty())
    for (const auto& [k, x] : weights_from_spectrum(minus).weights) out[k].second = x;
  return out;
}

JPReport jp_check(const SpectralData& data) {
  JPReport report;
  bool finite = std::isfinite(data.window);
  for (double z : data.active_levels) finite = finite && std::isfinite(z);
  for (double z : data.mus) finite = finite && std::isfinite(z);
  report.symmetry = finite;

  const InterlacingVerdict verdict = check_interlacing(data);
  report.interlacing = verdict.ok;
  if (!verdict.ok) {
    report.detail = verdict.detail;
    return report;
  }

  const ProductForm form(data);
  const double a = form.normalization();
  report.normalization_constant = a;
  const Complex far = form.evaluate(Complex(0.0, 1e8));
  report.normalization = std::isfinite(a) && a != 0.0 && std::abs(far - 1.0) <= 1e-6;

  constexpr std::array<double, 3> ys{1e6, 1e7, 1e8};
  for (std::size_t i = 0; i < ys.size(); ++i)
    report.boundedness_samples[i] = ys[i] * std::abs(form.evaluate(Complex(0.0, ys[i])) - 1.0);
  const auto& b = report.boundedness_samples;
  report.boundedness = std::all_of(b.begin(), b.end(), [](double x) { return std::isfinite(x); }) &&
                       b[2] <= 2.0 * std::max(b[0], b[1]) + 1e-6;

  int sign = 0;
  report.residue_signs = true;
  for (std::size_t p = 0; p < form.poles().size(); ++p) {
    const double r = form.residue(p);
    report.residues[level_of(form.poles()[p])] = r;
    const int s = r > 0.0 ? 1 : (r < 0.0 ? -1 : 0);
    if (sign == 0) sign = s;
    if (s == 0 || s != sign) report.residue_signs = false;
  }
  for (const auto& [k, r] : report.residues) report.alpha += r;
  if (report.alpha != 0.0)
    for (const auto& [k, r] : report.residues) report.norms[k] = r / report.alpha;
  if (!report.normalization) report.detail = "F(iy) does not tend to 1";
  else if (!report.boundedness) report.detail = "y |F(iy) - 1| grows";
  else if (!report.residue_signs) report.detail = "residues change sign";
  return report;
}

OperatorSpec synthesize_from_admissible(const JPReport& report) {
  if (!report.accepted())
    throw Error(ErrorKind::Rejection, "spectral data rejected: " + report.detail);
  double alpha = 0.0;
  for (const auto& [k, r] : report.residues) alpha += r;
  double c0 = 0.0;
  std::vector<FourierTerm> terms;
  for (const auto& [k, r] : report.residues) {
    const double c = std::sqrt(r / alpha);
    if (k == 0)
      c0 = c;
    else
      terms.push_back({k, c, 0.0});
  }
  return {alpha, PotentialSpec(c0, std::move(terms))};
}

}  // namespace nlpot
