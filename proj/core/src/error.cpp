#include "nlpot/error.hpp"

namespace nlpot {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Rejection: return "rejection";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::Degenerate: return "degenerate";
    case ErrorKind::MalformedSpectrum: return "malformed_spectrum";
    case ErrorKind::Inconsistent: return "inconsistent_spectra";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::Schema: return "schema";
  }
  return "unknown";
}

}  // namespace nlpot
