#include "nlpot/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace nlpot::io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) schema(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number()) schema(std::string("field \"") + key + "\" must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) schema(std::string("field \"") + key + "\" must be finite");
  return x;
}

int integer(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) schema(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> numbers(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array()) schema(std::string("field \"") + key + "\" must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) schema(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Json level_map(const std::map<int, double>& m, const char* value_key) {
  Json out = Json::array();
  for (const auto& [k, x] : m) out.push_back({{"k", k}, {value_key, x}});
  return out;
}

void write_number(std::string& out, double x) {
  if (!std::isfinite(x)) {
    out += "null";
    return;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  out += buf;
}

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(out, j[i], depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const Json& value) {
  std::string out;
  write(out, value, 0);
  out += "\n";
  return out;
}

Json to_json(const PotentialSpec& spec) {
  Json terms = Json::array();
  for (const auto& t : spec.terms()) terms.push_back({{"k", t.k}, {"c", t.c}, {"s", t.s}});
  return {{"c0", spec.c0()}, {"terms", terms}, {"K", spec.order()}};
}

PotentialSpec potential_from_json(const Json& j) {
  const double c0 = j.contains("c0") ? number(j, "c0") : 0.0;
  std::vector<FourierTerm> terms;
  if (j.contains("terms")) {
    const Json& arr = field(j, "terms");
    if (!arr.is_array()) schema("\"terms\" must be an array");
    for (const auto& t : arr) {
      FourierTerm term;
      term.k = integer(t, "k");
      term.c = t.contains("c") ? number(t, "c") : 0.0;
      term.s = t.contains("s") ? number(t, "s") : 0.0;
      terms.push_back(term);
    }
  }
  PotentialSpec spec(c0, std::move(terms));
  if (j.contains("K") && integer(j, "K") < spec.order())
    schema("\"K\" is below the highest level present");
  return spec;
}

Json to_json(const OperatorSpec& op) { return {{"alpha", op.alpha}, {"potential", to_json(op.potential)}}; }

OperatorSpec operator_from_json(const Json& j) {
  OperatorSpec op;
  op.alpha = number(j, "alpha");
  op.potential = potential_from_json(field(j, "potential"));
  if (j.contains("normalize")) {
    if (!j["normalize"].is_boolean()) schema("\"normalize\" must be a boolean");
    if (j["normalize"].get<bool>()) {
      const auto terms = op.potential.terms();
      op.potential = PotentialSpec::build(op.potential.c0(), {terms.begin(), terms.end()}, true);
    }
  }
  return op;
}

Json to_json(const ClassifiedSpectrum& spectrum) {
  Json entries = Json::array();
  for (const auto& e : spectrum.entries)
    entries.push_back({{"z", e.z}, {"m", e.multiplicity}, {"tag", std::string(to_string(e.tag))}});
  return {{"window", spectrum.window}, {"entries", entries}};
}

ClassifiedSpectrum spectrum_from_json(const Json& j) {
  ClassifiedSpectrum s;
  s.window = number(j, "window");
  const Json& arr = field(j, "entries");
  if (!arr.is_array()) schema("\"entries\" must be an array");
  for (const auto& e : arr) {
    SpectralEntry entry;
    entry.z = number(e, "z");
    entry.multiplicity = integer(e, "m");
    const Json& tag = field(e, "tag");
    if (!tag.is_string()) schema("\"tag\" must be a string");
    const auto parsed = parse_tag(tag.get<std::string>());
    if (!parsed) schema("unknown tag \"" + tag.get<std::string>() + "\"");
    entry.tag = *parsed;
    s.entries.push_back(entry);
  }
  return s;
}

Json to_json(const SpectralData& data) {
  return {{"window", data.window},
          {"active_levels", data.active_levels},
          {"mus", data.mus},
          {"sigma1_levels", data.sigma1_levels}};
}

SpectralData spectral_data_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries")) {
    const ClassifiedSpectrum s = spectrum_from_json(j);
    validate(s);
    return SpectralData::from_spectrum(s);
  }
  SpectralData data;
  data.active_levels = numbers(j, "active_levels");
  data.mus = numbers(j, "mus");
  if (j.contains("sigma1_levels")) data.sigma1_levels = numbers(j, "sigma1_levels");
  if (j.contains("window")) {
    data.window = number(j, "window");
  } else {
    for (double z : data.active_levels) data.window = std::max(data.window, z);
    for (double z : data.mus) data.window = std::max(data.window, z);
  }
  return data;
}

Json to_json(const ThreeSpectra& spectra) {
  return {{"base", to_json(spectra.base)},
          {"shifted", to_json(spectra.shifted)},
          {"squared", to_json(spectra.squared)},
          {"K", spectra.order}};
}

ThreeSpectra three_spectra_from_json(const Json& j) {
  ThreeSpectra t;
  t.base = spectral_data_from_json(field(j, "base"));
  t.shifted = spectral_data_from_json(field(j, "shifted"));
  t.squared = spectral_data_from_json(field(j, "squared"));
  t.order = integer(j, "K");
  return t;
}

Json to_json(const WeightTable& table) {
  Json out = {{"weights", level_map(table.weights, "X")}, {"orientation", table.orientation}};
  if (table.alpha) out["alpha"] = *table.alpha;
  return out;
}

Json to_json(const Reconstruction& rec) {
  return {{"alpha", rec.alpha},
          {"potential", to_json(rec.potential)},
          {"residuals", level_map(rec.residuals, "residual")},
          {"tail_weight", rec.tail_weight}};
}

Json to_json(const JPReport& report) {
  Json samples = Json::array();
  for (double b : report.boundedness_samples) samples.push_back(b);
  return {{"accepted", report.accepted()},
          {"verdicts",
           {{"symmetry", report.symmetry},
            {"interlacing", report.interlacing},
            {"normalization", report.normalization},
            {"boundedness", report.boundedness},
            {"residue_signs", report.residue_signs}}},
          {"detail", report.detail},
          {"normalization_constant", report.normalization_constant},
          {"boundedness_samples", samples},
          {"residues", level_map(report.residues, "A")},
          {"alpha", report.alpha},
          {"norms", level_map(report.norms, "norm2")}};
}

Json error_json(const Error& error) { return error_json(to_string(error.kind()), error.what()); }

Json error_json(std::string_view kind, std::string_view message) {
  return {{"error", std::string(kind)}, {"detail", {{"message", std::string(message)}}}};
}

}  // namespace nlpot::io
