#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "nlpot/error.hpp"
#include "nlpot/potential.hpp"
#include "nlpot/recovery.hpp"
#include "nlpot/spectrum.hpp"

namespace nlpot::io {

using Json = nlohmann::ordered_json;

/// Parses text; malformed JSON raises Error(Schema).
Json parse(std::string_view text);

/// Deterministic rendering: insertion-ordered keys, two-space indent and
/// every non-integral number printed with 17 significant digits.
std::string dump(const Json& value);

// {"c0": number, "terms": [{"k": int, "c": number, "s": number}], "K": int}
Json to_json(const PotentialSpec& spec);
PotentialSpec potential_from_json(const Json& j);

// {"alpha": number, "potential": {...}, "normalize": bool (optional)}
Json to_json(const OperatorSpec& op);
OperatorSpec operator_from_json(const Json& j);

// {"window": number, "entries": [{"z": number, "m": int, "tag": string}]}
Json to_json(const ClassifiedSpectrum& spectrum);
ClassifiedSpectrum spectrum_from_json(const Json& j);

/// Accepts either a classified spectrum or the explicit form
/// {"window", "active_levels", "mus"} and writes the explicit form.
Json to_json(const SpectralData& data);
SpectralData spectral_data_from_json(const Json& j);

// {"base": ..., "shifted": ..., "squared": ..., "K": int}
Json to_json(const ThreeSpectra& spectra);
ThreeSpectra three_spectra_from_json(const Json& j);

Json to_json(const WeightTable& table);
Json to_json(const Reconstruction& rec);
Json to_json(const JPReport& report);

/// {"error": kind, "detail": {"message": text}}
Json error_json(const Error& error);
Json error_json(std::string_view kind, std::string_view message);

}  // namespace nlpot::io
