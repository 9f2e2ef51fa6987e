#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nlpot/charfn.hpp"
#include "nlpot/error.hpp"
#include "nlpot/json_io.hpp"
#include "nlpot/oracle.hpp"
#include "nlpot/recovery.hpp"
#include "nlpot/spectrum.hpp"

namespace {

using nlpot::Complex;
using nlpot::io::Json;

constexpr int kExitOk = 0;
constexpr int kExitVerdict = 1;
constexpr int kExitError = 2;

struct Options {
  std::string input = "-";
  std::string output;
  std::optional<double> window;
  std::optional<int> order;
  std::optional<int> truncation;
  std::string plot;
};

// Failure that is not a module error (files, arguments).
struct UsageError {
  std::string kind;
  std::string message;
};

Json read_input(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError{"io", "cannot open input " + path};
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return nlpot::io::parse(text);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError{"io", "cannot open output " + path};
  out << text;
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double default_window(const nlpot::OperatorSpec& op) { return nlpot::l0::level(op.potential.order() + 1); }

bool near_even(double lambda, double radius) {
  return std::abs(lambda - 2.0 * std::round(lambda / 2.0)) < radius;
}

// |Delta(alpha, lambda) - Q(lambda^2) Delta(0, lambda)| / max(1, |Delta|).
double secular_identity_residual(const nlpot::CharfnContext& ctx, const nlpot::WeightTable& table,
                                 double lambda) {
  const Complex delta = ctx.delta(lambda);
  const double q = nlpot::charfn::q_secular(ctx.op().alpha, table.norms, lambda * lambda);
  return std::abs(delta - q * nlpot::charfn::delta0(lambda)) / std::max(1.0, std::abs(delta));
}

void emit_plot(const std::string& path, const nlpot::OperatorSpec& op, double window) {
  const nlpot::CharfnContext ctx(op);
  const nlpot::WeightTable table = nlpot::weight_table(op);
  std::ostringstream csv;
  csv << "lambda,re_delta,residual\n";
  const int steps = static_cast<int>(std::floor(std::sqrt(window) * 100.0));
  for (int i = 1; i <= steps; ++i) {
    const double lambda = i / 100.0;
    double residual = NAN;
    try {
      residual = secular_identity_residual(ctx, table, lambda);
    } catch (const nlpot::Error&) {
      // lambda^2 sits on an active pole
    }
    csv << csv_number(lambda) << ',' << csv_number(ctx.delta_real(lambda)) << ','
        << csv_number(residual) << '\n';
  }
  write_text(path, csv.str());
}

int run_forward(const Options& o) {
  const nlpot::OperatorSpec op = nlpot::io::operator_from_json(read_input(o.input));
  const double window = o.window.value_or(default_window(op));
  Json out;
  if (o.truncation) {
    // Same spectra as forward_three_spectra, kept in classified form.
    const int order = o.order.value_or(op.potential.order());
    if (order < 0 || order > *o.truncation)
      throw nlpot::Error(nlpot::ErrorKind::Rejection, "--order must lie in [0, --truncation]");
    const nlpot::Companions comp = nlpot::companions(op.potential, *o.truncation);
    const double w = nlpot::l0::level(*o.truncation + 1);
    out = {{"base", nlpot::io::to_json(nlpot::classify_spectrum(op, w))},
           {"shifted", nlpot::io::to_json(nlpot::classify_spectrum({op.alpha, comp.shifted}, w))},
           {"squared", nlpot::io::to_json(nlpot::classify_spectrum({op.alpha, comp.squared}, w))},
           {"K", order}};
  } else {
    out = nlpot::io::to_json(nlpot::classify_spectrum(op, window));
  }
  write_text(o.output, nlpot::io::dump(out));
  if (!o.plot.empty()) emit_plot(o.plot, op, window);
  return kExitOk;
}

int run_inverse(const Options& o) {
  nlpot::ThreeSpectra spectra = nlpot::io::three_spectra_from_json(read_input(o.input));
  if (o.order) spectra.order = *o.order;
  const nlpot::Reconstruction rec = nlpot::invert_three_spectra(spectra);
  write_text(o.output, nlpot::io::dump(nlpot::io::to_json(rec)));
  return kExitOk;
}

int run_synth(const Options& o) {
  const nlpot::SpectralData data = nlpot::io::spectral_data_from_json(read_input(o.input));
  const nlpot::JPReport report = nlpot::jp_check(data);
  Json out = {{"report", nlpot::io::to_json(report)}, {"operator", nullptr}};
  if (report.accepted()) {
    const nlpot::OperatorSpec op = nlpot::synthesize_from_admissible(report);
    out["operator"] = nlpot::io::to_json(op);
    const double top = std::max(data.active_levels.back(), data.mus.back());
    const nlpot::ClassifiedSpectrum again = nlpot::classify_spectrum(op, std::max({4.0, top + 1.0, data.window}));
    const auto mus = again.secular_values();
    double deviation = mus.size() >= data.mus.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(mus.size(), data.mus.size()); ++i)
      deviation = std::max(deviation, std::abs(mus[i] - data.mus[i]));
    out["reproduced_mus"] = mus;
    out["max_deviation"] = deviation;
  }
  write_text(o.output, nlpot::io::dump(out));
  return report.accepted() ? kExitOk : kExitVerdict;
}

Json check(const char* name, double residual, double tolerance) {
  return {{"name", name},
          {"max_residual", residual},
          {"tolerance", tolerance},
          {"pass", residual <= tolerance}};
}

int run_validate(const Options& o) {
  const nlpot::OperatorSpec op = nlpot::io::operator_from_json(read_input(o.input));
  const double window = o.window.value_or(900.0);
  const double lambda_max = std::sqrt(window);
  const nlpot::CharfnContext ctx(op);
  const nlpot::WeightTable table = nlpot::weight_table(op);

  double identity = 0.0;
  for (int i = 5; i / 100.0 <= lambda_max; ++i) {
    const double lambda = i / 100.0;
    if (near_even(lambda, 0.05)) continue;
    identity = std::max(identity, secular_identity_residual(ctx, table, lambda));
  }

  // Complex sample points stay in a strip |Im lambda| <= 2.5 where the
  // terms are O(e^{2.5 pi}) and cancellation error stays below 1e-10.
  std::vector<Complex> points;
  for (int j = 0; j < 100; ++j) points.emplace_back(0.05 + j * lambda_max / 100.0, 0.0);
  for (int j = 0; j < 100; ++j) points.emplace_back(-10.0 + 0.2 * j, 0.5 * (1 + j % 5) * (j % 2 ? 1 : -1));

  double relation = 0.0;
  double symmetry = 0.0;
  for (Complex l : points) {
    relation = std::max(relation, std::abs(ctx.phi(l) + ctx.phi_star(l) - ctx.vtilde(l) * ctx.vtilde_star(l)));
    const Complex d = ctx.delta(l);
    const double scale = std::max(1.0, std::abs(d));
    symmetry = std::max(symmetry, std::abs(ctx.delta(-l) - d) / scale);
    symmetry = std::max(symmetry, std::abs(std::conj(ctx.delta(std::conj(l))) - d) / scale);
  }

  Json checks = Json::array();
  checks.push_back(check("secular_identity", identity, 1e-9));
  checks.push_back(check("phi_relation", relation, 1e-10));
  checks.push_back(check("delta_symmetry", symmetry, 1e-10));
  bool passed = true;
  for (const auto& c : checks) passed = passed && c["pass"].get<bool>();
  const Json out = {{"lambda_max", lambda_max}, {"checks", checks}, {"passed", passed}};
  write_text(o.output, nlpot::io::dump(out));
  if (!o.plot.empty()) emit_plot(o.plot, op, window);
  return passed ? kExitOk : kExitVerdict;
}

int run_oracle_compare(const Options& o) {
  const nlpot::OperatorSpec op = nlpot::io::operator_from_json(read_input(o.input));
  const double window = o.window.value_or(default_window(op));
  const int n = o.truncation.value_or(
      std::max(op.potential.order() + 8, static_cast<int>(std::ceil(2.0 * std::sqrt(window))) + 16));
  const nlpot::ClassifiedSpectrum solver = nlpot::classify_spectrum(op, window);
  std::vector<nlpot::oracle::Cluster> oracle;
  for (const auto& c : nlpot::oracle::oracle_spectrum(op, n))
    if (c.value <= window + 1e-6) oracle.push_back(c);

  Json rows = Json::array();
  double deviation = solver.entries.size() == oracle.size() ? 0.0 : INFINITY;
  bool multiplicities = solver.entries.size() == oracle.size();
  const std::size_t count = std::max(solver.entries.size(), oracle.size());
  for (std::size_t i = 0; i < count; ++i) {
    Json row = Json::object();
    if (i < solver.entries.size()) {
      const auto& e = solver.entries[i];
      row["z"] = e.z;
      row["m"] = e.multiplicity;
      row["tag"] = std::string(nlpot::to_string(e.tag));
    }
    if (i < oracle.size()) {
      row["oracle_z"] = oracle[i].value;
      row["oracle_m"] = oracle[i].multiplicity;
    }
    if (i < solver.entries.size() && i < oracle.size()) {
      const double d = std::abs(solver.entries[i].z - oracle[i].value);
      row["deviation"] = d;
      deviation = std::max(deviation, d);
      multiplicities = multiplicities && solver.entries[i].multiplicity == oracle[i].multiplicity;
    }
    rows.push_back(row);
  }
  const bool pass = multiplicities && deviation <= 1e-8;
  const Json out = {{"window", window},
                    {"N", n},
                    {"rows", rows},
                    {"max_deviation", deviation},
                    {"multiplicities_match", multiplicities},
                    {"pass", pass}};
  write_text(o.output, nlpot::io::dump(out));
  return pass ? kExitOk : kExitVerdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of the periodic operator -y'' + alpha <y, v> v"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "Input JSON file ('-' for stdin)");
    sub->add_option("-o,--output", o.output, "Output JSON file (stdout by default)");
  };

  auto* forward = app.add_subcommand("forward", "Classified spectrum of an operator");
  add_common(forward);
  forward->add_option("--window", o.window, "Spectral window (default 4(K+1)^2)");
  forward->add_option("--order", o.order, "Reconstruction order written with --truncation");
  forward->add_option("--truncation", o.truncation, "Emit the three spectra with companions truncated here");
  forward->add_option("--emit-plot", o.plot, "CSV of (lambda, Re Delta, identity residual)");

  auto* inverse = app.add_subcommand("inverse", "Reconstruct alpha and v from three spectra");
  add_common(inverse);
  inverse->add_option("--order", o.order, "Override the reconstruction order K");

  auto* synth = app.add_subcommand("synth", "Admissibility check and synthesis from spectral data");
  add_common(synth);

  auto* validate = app.add_subcommand("validate", "Residuals of the characteristic-function identities");
  add_common(validate);
  validate->add_option("--window", o.window, "Check lambda up to sqrt(window) (default 900)");
  validate->add_option("--emit-plot", o.plot, "CSV of (lambda, Re Delta, identity residual)");

  auto* compare = app.add_subcommand("oracle-compare", "Secular solver against the matrix truncation");
  add_common(compare);
  compare->add_option("--window", o.window, "Spectral window (default 4(K+1)^2)");
  compare->add_option("--truncation", o.truncation, "Truncation level N of the matrix oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << nlpot::io::dump(nlpot::io::error_json("usage", e.what()));
    return kExitError;
  }

  try {
    if (*forward) return run_forward(o);
    if (*inverse) return run_inverse(o);
    if (*synth) return run_synth(o);
    if (*validate) return run_validate(o);
    return run_oracle_compare(o);
  } catch (const nlpot::Error& e) {
    std::cout << nlpot::io::dump(nlpot::io::error_json(e));
  } catch (const UsageError& e) {
    std::cout << nlpot::io::dump(nlpot::io::error_json(e.kind, e.message));
  } catch (const std::exception& e) {
    std::cout << nlpot::io::dump(nlpot::io::error_json("internal", e.what()));
  }
  return kExitError;
}
