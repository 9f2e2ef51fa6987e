#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "nlpot/charfn.hpp"
#include "nlpot/potential.hpp"

namespace nlpot {

/// Per-level weights X_k = alpha ||v_k||^2 of the active levels (those with
/// ||v_k||^2 > kWeightFloor).  Inactive levels are absent from `weights`.
///
/// On the forward side `alpha` and `norms` are known.  Tables recovered
/// from a spectrum carry only the X_k and the observed interlacing
/// orientation (+1: secular roots above their paired poles, -1: below).
struct WeightTable {
  std::map<int, double> weights;
  std::map<int, double> norms;
  std::optional<double> alpha;
  int orientation = 0;

  bool is_active(int k) const { return weights.contains(k); }
  std::vector<int> active_levels() const;
  double total() const;
};

/// X_k = alpha (c_k^2 + s_k^2), X_0 = alpha c0^2.
WeightTable weight_table(const OperatorSpec& op);

/// Real roots of Q(z) = 1 + sum_k X_k / (4k^2 - z), one per gap between
/// consecutive active poles plus one exterior root (above the largest pole
/// when the weights are positive, below the smallest when negative).
/// Throws Error(Degenerate) when the table has no nonzero weight and
/// Error(Rejection) for weights of mixed sign.
std::vector<double> all_secular_roots(const WeightTable& table);

/// Secular roots not exceeding `window`.  Requires window above the largest
/// active pole (Error(Rejection) otherwise).
std::vector<double> secular_roots(const WeightTable& table, double window);

enum class SpectralTag { Sigma0, Sigma2, Sigma0CapSigma2, Sigma1 };

std::string_view to_string(SpectralTag tag) noexcept;
std::optional<SpectralTag> parse_tag(std::string_view text) noexcept;

struct SpectralEntry {
  double z = 0.0;
  int multiplicity = 1;
  SpectralTag tag = SpectralTag::Sigma2;

  friend bool operator==(const SpectralEntry&, const SpectralEntry&) = default;
};

/// Eigenvalues of L(alpha, v) up to `window`, each with multiplicity and
/// class.  Entries are sorted by z with distinct values.
struct ClassifiedSpectrum {
  double window = 0.0;
  std::vector<SpectralEntry> entries;

  /// Eigenvalues repeated according to multiplicity.
  std::vector<double> flattened() const;
  /// Values tagged Sigma2 or Sigma0CapSigma2 (the zeros of Q).
  std::vector<double> secular_values() const;
  int total_multiplicity() const;
};

/// Tolerance for merging a secular root into an untouched level.
inline constexpr double kCoincidenceTol = 1e-9;

/// Full classified spectrum up to `window` (>= 4).
ClassifiedSpectrum classify_spectrum(const OperatorSpec& op, double window);

/// Checks sortedness and the tag/multiplicity pairing; throws
/// Error(MalformedSpectrum) with the first violation.
void validate(const ClassifiedSpectrum& spectrum);

}  // namespace nlpot
