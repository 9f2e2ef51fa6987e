#include "nlpot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nlpot/error.hpp"

namespace nlpot {

std::vector<int> WeightTable::active_levels() const {
  std::vector<int> out;
  out.reserve(weights.size());
  for (const auto& [k, x] : weights) out.push_back(k);
  return out;
}

double WeightTable::total() const {
  double sum = 0.0;
  for (const auto& [k, x] : weights) sum += x;
  return sum;
}

WeightTable weight_table(const OperatorSpec& op) {
  WeightTable table;
  table.alpha = op.alpha;
  const auto& v = op.potential;
  for (int k = 0; k <= v.order(); ++k) {
    const double n2 = v.level_weight(k);
    if (!(n2 > kWeightFloor)) continue;
    table.norms[k] = n2;
    table.weights[k] = op.alpha * n2;
  }
  if (op.alpha > 0.0) table.orientation = 1;
  if (op.alpha < 0.0) table.orientation = -1;
  return table;
}

namespace {

// Q in coordinates t = z - origin, where origin is one of the poles.  The
// offsets pole - origin are integers, so roots close to the origin keep
// full relative accuracy.
struct ShiftedSecular {
  std::vector<double> offsets;
  std::vector<double> weights;

  double value(double t) const {
    double sum = 1.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) sum += weights[i] / (offsets[i] - t);
    return sum;
  }
  double slope(double t) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const double d = offsets[i] - t;
      sum += weights[i] / (d * d);
    }
    return sum;
  }
};

ShiftedSecular shifted(const std::vector<double>& poles, const std::vector<double>& weights,
                       double origin) {
  ShiftedSecular q;
  q.weights = weights;
  q.offsets.reserve(poles.size());
  for (double p : poles) q.offsets.push_back(p - origin);
  return q;
}

// Root of the monotone function q on the open bracket (lo, hi) where the sign
// change is known: q < 0 near `lo` iff lower_negative.  Bisection keeps the
// bracket; Newton steps are accepted only when they stay inside it.
double solve_bracketed(const ShiftedSecular& q, double lo, double hi, bool lower_negative) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = q.value(t);
    if (f == 0.0) return t;
    if ((f < 0.0) == lower_negative)
      lo = t;
    else
      hi = t;
    const double width = hi - lo;
    const double scale = std::max(std::abs(lo), std::abs(hi));
    if (width <= 2.0 * kEps * scale || width <= std::numeric_limits<double>::min()) break;
    const double df = q.slope(t);
    double next = t - f / df;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

}  // namespace

std::vector<double> all_secular_roots(const WeightTable& table) {
  std::vector<double> poles;
  std::vector<double> weights;
  int sign = 0;
  for (const auto& [k, x] : table.weights) {
    if (x == 0.0) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (sign != 0 && s != sign)
      throw Error(ErrorKind::Rejection, "secular weights of mixed sign");
    sign = s;
    poles.push_back(l0::level(k));
    weights.push_back(x);
  }
  if (poles.empty())
    throw Error(ErrorKind::Degenerate, "no active level: spectrum equals that of L0");

  const std::size_t n = poles.size();
  std::vector<double> roots;
  roots.reserve(n);

  if (sign < 0) {
    // Below the smallest pole Q falls from 1 to -inf.
    const ShiftedSecular q = shifted(poles, weights, poles.front());
    double reach = 1.0;
    while (q.value(-reach) <= 0.0) reach *= 2.0;
    roots.push_back(poles.front() + solve_bracketed(q, -reach, 0.0, false));
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double a = poles[j];
    const double b = poles[j + 1];
    const double half = 0.5 * (b - a);
    // Q runs from -sign*inf at a to +sign*inf at b.
    const double mid_value = shifted(poles, weights, a).value(half);
    const bool root_in_left = sign > 0 ? mid_value >= 0.0 : mid_value <= 0.0;
    if (root_in_left) {
      const ShiftedSecular q = shifted(poles, weights, a);
      roots.push_back(a + solve_bracketed(q, 0.0, half, sign > 0));
    } else {
      const ShiftedSecular q = shifted(poles, weights, b);
      roots.push_back(b + solve_bracketed(q, -half, 0.0, sign > 0));
    }
  }
  if (sign > 0) {
    // Above the largest pole Q rises from -inf to 1.
    const ShiftedSecular q = shifted(poles, weights, poles.back());
    double reach = 1.0;
    while (q.value(reach) <= 0.0) reach *= 2.0;
    roots.push_back(poles.back() + solve_bracketed(q, 0.0, reach, true));
  }
  return roots;
}

std::vector<double> secular_roots(const WeightTable& table, double window) {
  if (!table.weights.empty() && !(window > l0::level(table.weights.rbegin()->first)))
    throw Error(ErrorKind::Rejection, "window must exceed the largest active pole");
  auto roots = all_secular_roots(table);
  std::erase_if(roots, [window](double z) { return z > window; });
  return roots;
}

std::string_view to_string(SpectralTag tag) noexcept {
  switch (tag) {
    case SpectralTag::Sigma0: return "Sigma0";
    case SpectralTag::Sigma2: return "Sigma2";
    case SpectralTag::Sigma0CapSigma2: return "Sigma0CapSigma2";
    case SpectralTag::Sigma1: return "Sigma1";
  }
  return "Sigma2";
}

std::optional<SpectralTag> parse_tag(std::string_view text) noexcept {
  for (auto tag : {SpectralTag::Sigma0, SpectralTag::Sigma2, SpectralTag::Sigma0CapSigma2,
                   SpectralTag::Sigma1})
    if (to_string(tag) == text) return tag;
  return std::nullopt;
}

std::vector<double> ClassifiedSpectrum::flattened() const {
  std::vector<double> out;
  for (const auto& e : entries)
    for (int i = 0; i < e.multiplicity; ++i) out.push_back(e.z);
  return out;
}

std::vector<double> ClassifiedSpectrum::secular_values() const {
  std::vector<double> out;
  for (const auto& e : entries)
    if (e.tag == SpectralTag::Sigma2 || e.tag == SpectralTag::Sigma0CapSigma2) out.push_back(e.z);
  return out;
}

int ClassifiedSpectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& e : entries) total += e.multiplicity;
  return total;
}

ClassifiedSpectrum classify_spectrum(const OperatorSpec& op, double window) {
  if (!(window >= 4.0)) throw Error(ErrorKind::Rejection, "window must be >= 4");
  const WeightTable table = weight_table(op);
  const int top = l0::max_level(window);

  ClassifiedSpectrum out;
  out.window = window;
  for (int k = 0; k <= top; ++k) {
    const double z = l0::level(k);
    if (!table.is_active(k) || op.alpha == 0.0) {
      out.entries.push_back({z, l0::multiplicity(k), SpectralTag::Sigma0});
    } else if (k > 0) {
      out.entries.push_back({z, l0::multiplicity(k) - 1, SpectralTag::Sigma1});
    }
    // An active level 0 loses its only eigenvector and leaves the spectrum.
  }

  if (op.alpha != 0.0 && !table.weights.empty()) {
    for (double mu : all_secular_roots(table)) {
      if (mu > window) continue;
      const int k = l0::level_index(mu, kCoincidenceTol);
      auto it = std::find_if(out.entries.begin(), out.entries.end(), [&](const SpectralEntry& e) {
        return k >= 0 && e.tag == SpectralTag::Sigma0 && e.z == l0::level(k);
      });
      if (it != out.entries.end()) {
        it->multiplicity += 1;
        it->tag = SpectralTag::Sigma0CapSigma2;
      } else {
        out.entries.push_back({mu, 1, SpectralTag::Sigma2});
      }
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const SpectralEntry& a, const SpectralEntry& b) { return a.z < b.z; });
  return out;
}

void validate(const ClassifiedSpectrum& spectrum) {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::MalformedSpectrum, what); };
  for (std::size_t i = 0; i < spectrum.entries.size(); ++i) {
    const auto& e = spectrum.entries[i];
    if (!std::isfinite(e.z)) fail("non-finite eigenvalue");
    if (e.z > spectrum.window) fail("eigenvalue above window: " + std::to_string(e.z));
    if (i > 0 && !(spectrum.entries[i - 1].z < e.z)) fail("entries not strictly increasing");
    const int k = l0::level_index(e.z, kCoincidenceTol);
    const bool at_zero = k == 0;
    switch (e.tag) {
      case SpectralTag::Sigma0:
        if (k < 0 || e.multiplicity != (at_zero ? 1 : 2)) fail("bad Sigma0 entry at " + std::to_string(e.z));
        break;
      case SpectralTag::Sigma1:
        if (k < 1 || e.multiplicity != 1) fail("bad Sigma1 entry at " + std::to_string(e.z));
        break;
      case SpectralTag::Sigma0CapSigma2:
        if (k < 0 || e.multiplicity != (at_zero ? 2 : 3)) fail("bad coincidence entry at " + std::to_string(e.z));
        break;
      case SpectralTag::Sigma2:
        if (e.multiplicity != 1 || k >= 0) fail("bad Sigma2 entry at " + std::to_string(e.z));
        break;
    }
  }
}

}  // namespace nlpot
