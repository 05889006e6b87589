#include "srweyl/cli/commands.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "srweyl/algebra/parse.hpp"
#include "srweyl/cli/spec_io.hpp"
#include "srweyl/fundamental/fundamental.hpp"
#include "srweyl/hamiltonian/hamiltonian.hpp"

#ifndef SRWEYL_VERSION
#define SRWEYL_VERSION "0.0.0"
#endif

namespace srweyl::cli {

namespace {

using geometry::SubRiemannianStructure;

constexpr std::size_t kMaxPrintedLength = 4000;
constexpr const char* kSamplingNote =
    "sampling certificate, not a proof; ranks are certified over the rationals, and points with complex-only "
    "degeneracies lie outside the rational sampling net";

std::string fmt(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6e", value);
  return buffer;
}

std::string printable(const std::string& text) {
  if (text.size() <= kMaxPrintedLength) return text;
  return "<" + std::to_string(text.size()) + " characters omitted>";
}

/// Layout names with the jet slots renamed t1..tr (certificate parameters).
std::vector<std::string> t_names(const SubRiemannianStructure& s) {
  auto names = s.layout().names();
  for (std::size_t j = 0; j < s.rank; ++j) names[s.layout().alpha(j)] = "t" + std::to_string(j + 1);
  return names;
}

Document tool_section() { return Document{{"name", "srweyl"}, {"version", SRWEYL_VERSION}}; }

Document spec_section(const SubRiemannianStructure& s) {
  const auto names = s.layout().names();
  Document doc;
  doc["name"] = s.name;
  doc["dim"] = s.dim;
  doc["rank"] = s.rank;
  if (s.weights) doc["weights"] = *s.weights;
  Document base = Document::array();
  for (const auto& q : s.base_point) base.push_back(algebra::to_string(q));
  doc["base_point"] = base;
  Document frame = Document::array();
  for (const auto& field : s.frame) {
    Document components = Document::array();
    for (const auto& c : field.components()) components.push_back(c.to_string(names));
    frame.push_back(components);
  }
  doc["frame"] = frame;
  return doc;
}

Document vector_doc(const algebra::QVector& v) {
  Document out = Document::array();
  for (const auto& q : v) out.push_back(algebra::to_string(q));
  return out;
}

Document rigidity_section(const fundamental::RigidityReport& r, const SubRiemannianStructure& s) {
  Document doc;
  doc["verdict"] = fundamental::to_string(r.verdict);
  doc["route"] = fundamental::to_string(r.route);
  doc["reason"] = r.reason;
  doc["assumptions"] = r.assumptions;
  if (r.layers) doc["layers"] = r.layers;
  if (r.psi) {
    const auto names = s.layout().names();
    doc["consistency_layers"] = r.consistency_layers;
    doc["generic_polynomial"] = r.generic_polynomial;
    doc["consistent_jet_dimension"] = r.consistent_dimension;
    doc["extended_jet_dimension"] = r.extended_dimension;
    doc["extended_jets_polynomial"] = r.extended_jets_polynomial;
    Document psi;
    for (std::size_t k = 0; k < r.psi->components.size(); ++k) {
      psi["Psi" + std::to_string(s.rank + k + 1)] = printable(r.psi->components[k].to_string(names));
    }
    doc["psi"] = psi;
  }
  if (r.certificate) {
    const auto& cert = *r.certificate;
    const auto names = t_names(s);
    Document c;
    Document jets = Document::array();
    for (const auto& v : cert.polynomial_jets) jets.push_back(vector_doc(v));
    c["polynomial_jets"] = jets;
    c["homogeneous"] = cert.homogeneous;
    if (!cert.diagnostics.empty()) c["diagnostics"] = cert.diagnostics;
    Document psi;
    for (std::size_t k = 0; k < cert.psi.size(); ++k) {
      psi["Psi" + std::to_string(s.rank + k + 1)] = printable(cert.psi[k].to_string(names));
    }
    c["psi"] = psi;
    Document alpha = Document::array();
    for (const auto& a : cert.alpha) alpha.push_back(a.to_string(names));
    c["alpha_gradient"] = alpha;
    Document k_values;
    for (std::size_t i = 0; i < cert.k_values.size(); ++i) {
      Document row = Document::array();
      for (const auto& k : cert.k_values[i]) row.push_back(k.to_string(names));
      k_values["K" + std::to_string(i + 1)] = row;
    }
    if (!cert.k_values.empty()) c["k_values"] = k_values;
    Document residuals;
    for (std::size_t i = 0; i < cert.recursion_residuals.size(); ++i) {
      Document row = Document::array();
      for (const auto& k : cert.recursion_residuals[i]) row.push_back(k.to_string(names));
      residuals["K" + std::to_string(i + 1)] = row;
    }
    if (!cert.recursion_residuals.empty()) c["recursion_residuals"] = residuals;
    c["alpha_forced_zero"] = cert.alpha_forced_zero;
    doc["certificate"] = c;
  }
  if (r.abnormal) {
    doc["abnormal_evidence"] = Document{{"applicable", r.abnormal->applicable},
                                        {"all_minimal_order", r.abnormal->all_minimal_order},
                                        {"trajectories", r.abnormal->trajectories},
                                        {"certified", r.abnormal->certified}};
  }
  return doc;
}

Document locus_section(const abnormal::Stratification& strat) {
  const auto names = strat.structure.layout().names();
  Document doc;
  if (strat.all_of_annihilator) {
    doc["locus"] = "all of the annihilator (odd rank)";
  } else {
    doc["pfaffian"] = strat.pfaffian.to_string(names);
    doc["locus"] = strat.locus.to_string(names);
  }
  doc["locus_dimension"] = strat.locus_dimension;
  return doc;
}

Document strata_section(const abnormal::Stratification& strat) {
  Document out = Document::array();
  for (const auto& st : strat.strata) {
    Document d;
    d["level"] = st.level;
    if (st.dimension) {
      d["dimension"] = *st.dimension;
    } else {
      d["dimension"] = "unknown";
    }
    d["sampled"] = st.sampled;
    d["one_dimensional_kernel"] = st.one_dimensional;
    d["degenerate"] = st.degenerate;
    d["note"] = st.note;
    out.push_back(d);
  }
  return out;
}

Document covector_doc(const abnormal::CovectorPoint& p) {
  return Document{{"x", vector_doc(p.x)}, {"u", vector_doc(p.u)}};
}

void to_yaml(YAML::Emitter& out, const Document& doc) {
  if (doc.is_object()) {
    out << YAML::BeginMap;
    for (const auto& [key, value] : doc.items()) {
      out << YAML::Key << key << YAML::Value;
      to_yaml(out, value);
    }
    out << YAML::EndMap;
  } else if (doc.is_array()) {
    // Flow style only for short scalars that need no quoting inside brackets.
    const bool flat = std::all_of(doc.begin(), doc.end(), [](const Document& d) {
      if (!d.is_primitive()) return false;
      if (!d.is_string()) return true;
      const auto& text = d.get_ref<const std::string&>();
      return text.size() <= 40 && text.find_first_of(",:[]{}#") == std::string::npos;
    });
    if (flat) out << YAML::Flow;
    out << YAML::BeginSeq;
    for (const auto& value : doc) to_yaml(out, value);
    out << YAML::EndSeq;
  } else if (doc.is_string()) {
    out << doc.get<std::string>();
  } else if (doc.is_boolean()) {
    out << (doc.get<bool>() ? "true" : "false");
  } else if (doc.is_number_integer()) {
    out << doc.dump();
  } else if (doc.is_null()) {
    out << YAML::Null;
  } else {
    out << doc.dump();
  }
}

algebra::Rational parse_number(const std::string& text) {
  const std::vector<std::string> none;
  try {
    const auto p = algebra::parse_poly(text, none);
    return p.constant_term();
  } catch (const ParseError& e) {
    throw UsageError("not a number: '" + text + "' (" + e.what() + ")");
  }
}

std::vector<algebra::Rational> parse_numbers(const std::vector<std::string>& items, std::size_t expected,
                                             const std::string& what) {
  if (items.size() != expected) {
    throw UsageError(what + " needs " + std::to_string(expected) + " values, got " + std::to_string(items.size()));
  }
  std::vector<algebra::Rational> out;
  for (const auto& item : items) out.push_back(parse_number(item));
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write " + path);
  file << content;
}

/// Model used for the abnormal evidence: the nilpotent approximation when it exists.
std::pair<SubRiemannianStructure, std::string> evidence_model(const SubRiemannianStructure& s) {
  if (s.weights) {
    try {
      if (geometry::verify_privileged(s).privileged) {
        return {geometry::nilpotent_truncate(s), "nilpotent approximation"};
      }
    } catch (const Error&) {
    }
  }
  return {s, "given frame"};
}

}  // namespace

Document analyze(const SubRiemannianStructure& s, const AnalyzeOptions& options) {
  geometry::structure_functions(s);  // NonPolynomialStructure propagates before any output
  Document doc;
  doc["tool"] = tool_section();
  doc["input"] = spec_section(s);
  Document opts;
  if (options.layers) {
    opts["layers"] = *options.layers;
  } else {
    opts["layers"] = "auto";
  }
  opts["depth"] = options.depth;
  opts["seed"] = options.seed;
  opts["samples"] = options.samples;
  opts["T"] = fmt(options.horizon);
  opts["steps"] = options.steps;
  doc["options"] = opts;

  try {
    const auto growth = geometry::growth_vector(s, s.base_point);
    doc["growth"] = Document{{"vector", growth}};
  } catch (const NotBracketGenerating& e) {
    doc["growth"] = Document{{"error", e.what()}};
  }

  const auto [model, model_kind] = evidence_model(s);
  const auto c_model = geometry::structure_functions(model);
  abnormal::MinimalOrderOptions mo;
  mo.samples = options.samples;
  mo.horizon = options.horizon;
  mo.steps = options.steps;
  mo.seed = options.seed;
  const auto certificate = abnormal::minimal_order_certificate(model, c_model, mo);

  fundamental::VerdictOptions verdict_options;
  verdict_options.layers = options.layers;
  const auto report = fundamental::weyl_verdict(s, verdict_options, certificate.evidence());
  doc["rigidity"] = rigidity_section(report, s);

  const auto strat = abnormal::weak_stratification(model, c_model, options.depth, 12, options.seed);
  Document ab = locus_section(strat);
  ab["model"] = model_kind;
  ab["strata"] = strata_section(strat);
  Document cert;
  cert["applicable"] = certificate.applicable;
  cert["stable"] = certificate.stable;
  cert["all_minimal_order"] = certificate.all_minimal_order;
  Document nets = Document::array();
  for (const auto& run : certificate.runs) {
    nets.push_back(Document{{"points", run.requested}, {"trajectories", run.trajectories}, {"certified", run.certified}});
  }
  cert["nets"] = nets;
  cert["summary"] = certificate.summary;
  ab["minimal_order"] = cert;
  ab["note"] = kSamplingNote;
  doc["abnormal"] = ab;
  return doc;
}

AbnormalRun abnormal_scan(const SubRiemannianStructure& s, const AbnormalOptions& options) {
  const auto c = geometry::structure_functions(s);
  const auto strat = abnormal::wedge_locus(s, c);
  AbnormalRun run;
  Document& doc = run.report;
  doc["tool"] = tool_section();
  doc["input"] = spec_section(s);
  Document opts;
  if (options.from) {
    opts["from"] = covector_doc(*options.from);
  } else {
    opts["scan"] = options.scan;
  }
  opts["T"] = fmt(options.horizon);
  opts["steps"] = options.steps;
  opts["seed"] = options.seed;
  doc["options"] = opts;
  doc["stratification"] = locus_section(strat);

  std::vector<abnormal::CovectorPoint> starts;
  if (options.from) {
    const auto info = abnormal::kernel_at(strat, *options.from);
    if (info.in_w) {
      starts.push_back(*options.from);
    } else {
      doc["result"] = "initial covector is not in W_D" + std::string(info.zero_section ? " (zero section)" : "");
      return run;
    }
  } else {
    starts = abnormal::sample_w(strat, options.scan, options.seed);
    if (starts.empty()) {
      doc["result"] = "no abnormal extremals";
      return run;
    }
  }

  for (const auto& p : starts) run.trajectories.push_back(abnormal::integrate_abnormal(strat, p, options.horizon, options.steps));
  const auto summary = abnormal::minimal_order_verdict(run.trajectories);
  Document list = Document::array();
  for (std::size_t k = 0; k < starts.size(); ++k) {
    const auto& t = run.trajectories[k];
    double worst = 0.0;
    for (double v : t.locus_values) worst = std::max(worst, std::abs(v));
    list.push_back(Document{{"index", k},
                            {"start", covector_doc(starts[k])},
                            {"samples", t.states.size()},
                            {"truncated", t.truncated},
                            {"max_locus_value", fmt(worst)},
                            {"verdict", abnormal::to_string(summary.verdicts[k])}});
  }
  doc["result"] = std::to_string(summary.certified) + "/" + std::to_string(starts.size()) + " MinimalOrder";
  doc["aggregate"] = Document{{"trajectories", starts.size()},
                              {"minimal_order", summary.certified},
                              {"fraction", fmt(summary.fraction)},
                              {"note", kSamplingNote}};
  doc["trajectories"] = list;
  return run;
}

void write_abnormal_csv(std::ostream& out, const SubRiemannianStructure& s,
                        const std::vector<abnormal::AbnormalTrajectory>& trajectories) {
  out << "trajectory,t";
  for (std::size_t a = 1; a <= s.dim; ++a) out << ",x" << a;
  for (std::size_t k = s.rank + 1; k <= s.dim; ++k) out << ",u" << k;
  out << ",locus,in_w\n";
  out.precision(17);
  for (std::size_t k = 0; k < trajectories.size(); ++k) {
    const auto& t = trajectories[k];
    for (std::size_t i = 0; i < t.states.size(); ++i) {
      out << k << ',' << t.times[i];
      for (double v : t.states[i]) out << ',' << v;
      out << ',' << t.locus_values[i] << ',' << (t.in_w[i] ? 1 : 0) << '\n';
    }
  }
}

std::string render_text(const Document& doc) {
  YAML::Emitter out;
  to_yaml(out, doc);
  return std::string(out.c_str()) + "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weyl projective rigidity and abnormal extremals of polynomial sub-Riemannian frames", "srweyl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SRWEYL_VERSION);

  std::string spec_path, out_path, json_path, csv_path;
  std::optional<std::size_t> layers;
  AnalyzeOptions analyze_options;
  auto* analyze_cmd = app.add_subcommand("analyze", "growth vector, rigidity verdict and abnormal stratification");
  analyze_cmd->add_option("spec", spec_path, "structure spec file or catalog/<name>")->required();
  analyze_cmd->add_option("--layers", layers, "number of fundamental-system layers (default: automatic)");
  analyze_cmd->add_option("--depth", analyze_options.depth, "weak stratification depth");
  analyze_cmd->add_option("--seed", analyze_options.seed, "seed of the abnormal sampling");
  analyze_cmd->add_option("--samples", analyze_options.samples, "coarsest minimal-order net size");
  analyze_cmd->add_option("--out", out_path, "write the text report here instead of stdout");
  analyze_cmd->add_option("--json", json_path, "also write the report as JSON");

  std::vector<std::string> x0_text, u0_text;
  double horizon = 1.0;
  std::size_t steps = 100;
  auto* geodesic_cmd = app.add_subcommand("geodesic", "integrate a normal geodesic");
  geodesic_cmd->add_option("spec", spec_path, "structure spec file or catalog/<name>")->required();
  geodesic_cmd->add_option("--x0", x0_text, "initial point (n values)")->required()->delimiter(',');
  geodesic_cmd->add_option("--u0", u0_text, "initial frame momenta (n values)")->required()->delimiter(',');
  geodesic_cmd->add_option("--T", horizon, "time horizon")->required();
  geodesic_cmd->add_option("--steps", steps, "number of output steps");
  geodesic_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  AbnormalOptions abnormal_options;
  std::vector<std::string> from_text;
  std::size_t scan = 0;
  auto* abnormal_cmd = app.add_subcommand("abnormal", "characteristic curves of the abnormal locus");
  abnormal_cmd->add_option("spec", spec_path, "structure spec file or catalog/<name>")->required();
  auto* scan_opt = abnormal_cmd->add_option("--scan", scan, "number of random initial covectors on W_D");
  auto* from_opt = abnormal_cmd->add_option("--from", from_text, "initial covector x1..xn,u_{m+1}..u_n")
                       ->delimiter(',');
  scan_opt->excludes(from_opt);
  abnormal_cmd->add_option("--T", abnormal_options.horizon, "time horizon");
  abnormal_cmd->add_option("--steps", abnormal_options.steps, "number of output steps");
  abnormal_cmd->add_option("--seed", abnormal_options.seed, "seed of --scan");
  abnormal_cmd->add_option("--out", out_path, "write the text report here instead of stdout");
  abnormal_cmd->add_option("--json", json_path, "also write the report as JSON");
  abnormal_cmd->add_option("--csv", csv_path, "write the trajectories as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << SRWEYL_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    const auto s = load_spec(spec_path);
    if (analyze_cmd->parsed()) {
      analyze_options.layers = layers;
      if (layers && *layers == 0) throw UsageError("--layers must be positive");
      const Document doc = analyze(s, analyze_options);
      const std::string text = render_text(doc);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      if (!json_path.empty()) write_file(json_path, doc.dump(2) + "\n");
      return 0;
    }
    if (geodesic_cmd->parsed()) {
      if (steps == 0) throw UsageError("--steps must be positive");
      if (!(horizon > 0.0) || !std::isfinite(horizon)) throw UsageError("--T must be positive");
      const auto x0q = parse_numbers(x0_text, s.dim, "--x0");
      const auto u0q = parse_numbers(u0_text, s.dim, "--u0");
      std::vector<double> x0, u0;
      for (const auto& q : x0q) x0.push_back(q.get_d());
      for (const auto& q : u0q) u0.push_back(q.get_d());
      const auto c = geometry::structure_functions(s);
      const auto trajectory = hamiltonian::integrate_normal(s, c, x0, u0, horizon, steps);
      const std::string summary = "energy drift: " + fmt(trajectory.relative_energy_drift) + "\n";
      if (out_path.empty()) {
        hamiltonian::write_csv(out, trajectory, s.dim);
        err << summary;
      } else {
        std::ostringstream csv;
        hamiltonian::write_csv(csv, trajectory, s.dim);
        write_file(out_path, csv.str());
        out << summary;
      }
      return 0;
    }
    if (abnormal_cmd->parsed()) {
      if (abnormal_options.steps == 0) throw UsageError("--steps must be positive");
      if (!(abnormal_options.horizon > 0.0)) throw UsageError("--T must be positive");
      if (!from_text.empty()) {
        const auto values = parse_numbers(from_text, 2 * s.dim - s.rank, "--from");
        abnormal::CovectorPoint p;
        p.x.assign(values.begin(), values.begin() + static_cast<long>(s.dim));
        p.u.assign(values.begin() + static_cast<long>(s.dim), values.end());
        abnormal_options.from = p;
      } else {
        abnormal_options.scan = scan_opt->count() > 0 ? scan : 10;
      }
      const auto result = abnormal_scan(s, abnormal_options);
      const std::string text = render_text(result.report);
      if (out_path.empty()) {
        out << text;
      } else {
        write_file(out_path, text);
      }
      if (!json_path.empty()) write_file(json_path, result.report.dump(2) + "\n");
      if (!csv_path.empty()) {
        std::ostringstream csv;
        write_abnormal_csv(csv, s, result.trajectories);
        write_file(csv_path, csv.str());
      }
      return 0;
    }
  } catch (const NonPolynomialStructure& e) {
    err << "error: structure functions are not polynomial: " << e.what() << "\n";
    return 3;
  } catch (const SpecError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace srweyl::cli
