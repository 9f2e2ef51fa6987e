#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "nlpot/potential.hpp"

namespace nlpot::charfn {

/// 50-digit arithmetic for identity checks far from the real axis, where
/// the transforms grow like e^{pi |Im lambda|} and doubles lose the
/// absolute accuracy.
using WideReal = boost::multiprecision::cpp_bin_float_50;
using WideComplex = boost::multiprecision::cpp_complex_50;

WideComplex vtilde_wide(const PotentialSpec& spec, const WideComplex& lambda);
WideComplex phi_wide(const PotentialSpec& spec, const WideComplex& lambda);

inline WideComplex vtilde_star_wide(const PotentialSpec& spec, const WideComplex& lambda) {
  return conj(vtilde_wide(spec, conj(lambda)));
}

inline WideComplex phi_star_wide(const PotentialSpec& spec, const WideComplex& lambda) {
  return conj(phi_wide(spec, conj(lambda)));
}

}  // namespace nlpot::charfn
