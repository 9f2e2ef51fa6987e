#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nlpot/charfn.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/spectrum.hpp"

namespace nlpot {

/// The part of a spectrum that carries perturbation content.
///
/// `active_levels` are the unperturbed levels 4k^2 touched by the
/// potential, `mus` the zeros of the secular function in the order given
/// (interlacing is checked against that order, so a permuted sequence is
/// malformed).  `sigma1_levels` lists the active levels k >= 1 that stay in
/// the spectrum with multiplicity 1.
struct SpectralData {
  std::vector<double> active_levels;
  std::vector<double> mus;
  std::vector<double> sigma1_levels;
  double window = 0.0;

  /// Reads the data off eigenvalue multiplicities alone: a missing z = 0,
  /// or multiplicity 1 at 4k^2 (k >= 1), marks an active level; values off
  /// the lattice and coincidences (multiplicity m_k + 1) are secular zeros.
  /// Throws Error(MalformedSpectrum) for impossible multiplicities.
  static SpectralData from_spectrum(const ClassifiedSpectrum& spectrum);

  bool empty() const noexcept { return active_levels.empty() && mus.empty(); }
};

struct InterlacingVerdict {
  bool ok = false;
  int orientation = 0;  // +1 roots above their poles, -1 below
  std::string detail;
};

/// Strict alternation of `mus` with `active_levels` in either orientation.
InterlacingVerdict check_interlacing(const SpectralData& data);

/// F(z) = A prod_k (1 - z/mu_k) / (pi^2 prod_p (1 - z/z_p)), with the factor
/// for a zero at (or pole on) z = 0 replaced by z.  A is fixed by
/// F(iy) -> 1, estimated at y = 1e8 and 2e8 with one Richardson step.
class ProductForm {
 public:
  /// Requires interlaced data (Error(MalformedSpectrum) otherwise).
  explicit ProductForm(const SpectralData& data);

  double normalization() const noexcept { return a_; }
  Complex evaluate(Complex z) const { return a_ * unnormalized(z); }
  Complex unnormalized(Complex z) const;

  /// lim_{z -> z_p} (z_p - z) F(z) for the p-th active level, with the
  /// vanishing factor cancelled analytically.
  double residue(std::size_t p) const;

  const std::vector<double>& poles() const noexcept { return poles_; }
  const std::vector<double>& zeros() const noexcept { return zeros_; }
  int orientation() const noexcept { return orientation_; }

 private:
  std::vector<double> poles_;
  std::vector<double> zeros_;
  int orientation_ = 0;
  double a_ = 1.0;
};

/// X_p = alpha ||v_p||^2 from the residues of F.  Orientation is recorded
/// on the table.  Throws Error(Degenerate) for empty data and
/// Error(MalformedSpectrum) for broken interlacing.
WeightTable weights_from_spectrum(const SpectralData& data);

struct AlphaAndNorms {
  double alpha = 0.0;
  std::map<int, double> norms;
};

/// Splits weights under ||v|| = 1: alpha = sum X_k, ||v_k||^2 = X_k / alpha.
/// The sign of alpha must agree with the recorded interlacing orientation.
AlphaAndNorms alpha_and_norms(const WeightTable& table);

/// Independent route through the characteristic function:
///   X_p = -(4p/pi^2) Delta'(alpha, 2p),  X_0 = -Delta(alpha, 0) / pi^2,
/// derivative by Richardson-extrapolated central differences (h = 1e-6).
/// Reports every level 0..order (inactive levels come out ~0).
WeightTable weights_via_delta_derivative(const OperatorSpec& op);

struct ThreeSpectra {
  SpectralData base;     // L(alpha, v)
  SpectralData shifted;  // L(alpha, v + (x - pi/2))
  SpectralData squared;  // L(alpha, v + (x - pi/2)^2)
  int order = 0;         // reconstruction order K
};

/// Forward side of the three-spectra problem: spectra of the operator and
/// of its two companions truncated at `companion_order`, over a window of
/// 4 (companion_order + 1)^2.
ThreeSpectra forward_three_spectra(const OperatorSpec& op, int order, int companion_order);

struct Reconstruction {
  double alpha = 0.0;
  PotentialSpec potential;
  std::map<int, double> residuals;  // |c_k^2 + s_k^2 - ||v_k||^2|
  double tail_weight = 0.0;         // sum of ||v_k||^2 above the order
};

inline constexpr double kConsistencyTol = 1e-6;

/// Rebuilds alpha and a real v from the three spectra.  Throws
/// Error(Inconsistent) when a level fails c_k^2 + s_k^2 = ||v_k||^2 or the
/// spectra disagree on the sign of alpha.
Reconstruction invert_three_spectra(const ThreeSpectra& spectra);

/// alpha |c_k|^2 and alpha |s_k|^2 from the spectra of the even and odd
/// parts of v about pi/2.  A side without perturbation contributes zeros.
std::map<int, std::pair<double, double>> magnitudes_from_two_spectra(const SpectralData& plus,
                                                                     const SpectralData& minus);

/// Admissibility verdicts for spectral data.  The entire/exponential-type
/// half of the symmetry condition cannot be decided from finitely many
/// zeros; `symmetry` only confirms the data is real and finite.
struct JPReport {
  bool symmetry = false;
  bool interlacing = false;
  bool normalization = false;
  bool boundedness = false;
  bool residue_signs = false;

  std::string detail;
  double normalization_constant = 0.0;          // A
  std::array<double, 3> boundedness_samples{};  // y |F(iy) - 1| at 1e6, 1e7, 1e8
  std::map<int, double> residues;               // A_k per active level k
  double alpha = 0.0;
  std::map<int, double> norms;

  bool accepted() const noexcept {
    return symmetry && interlacing && normalization && boundedness && residue_signs;
  }
};

JPReport jp_check(const SpectralData& data);

/// Operator with alpha = sum A_k and all level weight on the cosine term.
/// Throws Error(Rejection) for a rejected report.
OperatorSpec synthesize_from_admissible(const JPReport& report);

}  // namespace nlpot
