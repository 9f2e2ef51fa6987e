#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nlpot {

enum class ErrorKind {
  Rejection,          // invalid argument to an operation
  Pole,               // secular function evaluated on an active pole
  Degenerate,         // no perturbation content (spectrum equals that of L0)
  MalformedSpectrum,  // interlacing or structural violation in spectral data
  Inconsistent,       // spectra that cannot come from one real potential
  Solver,             // numerical method failed to converge
  Schema,             // input document does not match the expected schema
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nlpot
