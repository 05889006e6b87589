#include "srweyl/error.hpp"
#include "srweyl/fundamental/fundamental.hpp"

namespace srweyl::fundamental {

namespace {

bool satisfies(const std::vector<AffineRow>& rows, const QVector& jet) {
  for (const auto& row : rows) {
    Rational value = row.back();
    for (std::size_t j = 0; j < jet.size(); ++j) value += row[j] * jet[j];
    if (!algebra::is_zero(value)) return false;
  }
  return true;
}

void apply_abnormal_route(RigidityReport& report, const std::string& why_not_polynomial) {
  const auto& evidence = report.abnormal;
  if (evidence && evidence->applicable && evidence->all_minimal_order) {
    report.verdict = Verdict::WeylRigid;
    report.route = Route::AbnormalRoute;
    report.reason = why_not_polynomial + "; every sampled abnormal extremal of the nilpotent approximation is of "
                    "minimal order (" + std::to_string(evidence->certified) + "/" +
                    std::to_string(evidence->trajectories) + " trajectories, sampling certificate)";
    return;
  }
  report.verdict = Verdict::Inconclusive;
  report.route = Route::None;
  if (!evidence) {
    report.reason = why_not_polynomial + "; no abnormal evidence supplied";
  } else if (!evidence->applicable) {
    report.reason = why_not_polynomial + "; abnormal route not applicable: " + evidence->summary;
  } else {
    report.reason = why_not_polynomial + "; minimal order not certified on " +
                    std::to_string(evidence->trajectories - evidence->certified) + " sampled trajectories";
  }
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::WeylRigid: return "WeylRigid";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::NotApplicable: return "NotApplicable";
  }
  return "unknown";
}

std::string to_string(Route r) {
  switch (r) {
    case Route::PolynomialCertificate: return "polynomial-certificate";
    case Route::AbnormalRoute: return "abnormal-route";
    case Route::None: return "none";
  }
  return "unknown";
}

RigidityReport weyl_verdict(const SubRiemannianStructure& s, const VerdictOptions& options,
                            const std::optional<MinimalOrderEvidence>& abnormal) {
  RigidityReport report;
  report.abnormal = abnormal;
  report.assumptions = {
      "the conclusion alpha^1 = ... = alpha^m = 0 is pointwise at the base point; local constancy of the conformal "
      "factor needs the same conclusion on a dense set of regular points",
      "corank hypotheses on families of geodesics are not decided; only strict normality is tested"};

  try {
    geometry::structure_functions(s);
  } catch (const NonPolynomialStructure& e) {
    report.verdict = Verdict::NotApplicable;
    report.reason = std::string("structure functions are not polynomial: ") + e.what();
    return report;
  }
  if (!s.weights) {
    report.verdict = Verdict::NotApplicable;
    report.reason = "no weights given, so no nilpotent approximation at the base point";
    return report;
  }
  if (s.rank == s.dim) {
    report.verdict = Verdict::NotApplicable;
    report.reason = "Riemannian structure: the fiber system has no unknowns";
    return report;
  }
  const auto privileged = geometry::verify_privileged(s);
  if (!privileged.privileged) {
    report.verdict = Verdict::NotApplicable;
    report.reason = "coordinates are not privileged at the base point";
    for (const auto& d : privileged.diagnostics) report.reason += "; " + d;
    return report;
  }

  const SubRiemannianStructure nilpotent = geometry::nilpotent_truncate(s);
  const StructureFunctions c_hat = geometry::structure_functions(nilpotent);
  const AlphaJet jet = AlphaJet::symbolic(nilpotent);
  const std::size_t m = s.rank, unknowns = s.dim - s.rank;

  std::optional<PsiSolution> psi;
  std::size_t layers = options.layers.value_or(unknowns);
  const std::size_t cap = options.layers.value_or(options.layer_cap_factor * unknowns);
  while (!psi) {
    try {
      psi = solve_psi(nilpotent_layers(nilpotent, c_hat, jet, layers));
    } catch (const NeedMoreLayers& e) {
      if (layers >= cap) {
        report.layers = layers;
        apply_abnormal_route(report, e.what());
        return report;
      }
      layers = std::min(2 * layers, cap);
    }
  }
  report.layers = layers;
  report.psi = psi;
  report.generic_polynomial = polynomiality_test(*psi);
  report.consistent_dimension = solution_space(psi->constraints, m).size();

  report.consistency_layers = layers + 1;
  const PsiSolution extended = solve_psi(nilpotent_layers(nilpotent, c_hat, jet, report.consistency_layers));
  const auto extended_jets = solution_space(extended.constraints, m);
  report.extended_dimension = extended_jets.size();
  const auto locus = polynomial_locus(extended);
  report.extended_jets_polynomial = true;
  for (const auto& v : extended_jets) report.extended_jets_polynomial &= satisfies(locus, v);

  report.certificate = ki_certificate(*psi, nilpotent, c_hat);
  const auto& cert = *report.certificate;
  if (cert.homogeneous && cert.alpha_forced_zero && report.extended_jets_polynomial) {
    report.verdict = Verdict::WeylRigid;
    report.route = Route::PolynomialCertificate;
    report.reason = "Psi is polynomial on every jet compatible with " + std::to_string(report.consistency_layers) +
                    " layers, and the K_i recursion forces alpha^1 = ... = alpha^m = 0 there";
    return report;
  }

  std::string why;
  if (!cert.homogeneous) {
    why = "Psi is not linear in the fiber variables on its polynomial locus";
  } else if (!cert.alpha_forced_zero) {
    why = "the K_i recursion leaves a nonzero jet gradient";
  } else {
    why = "Psi is not polynomial on all jets compatible with " + std::to_string(report.consistency_layers) + " layers";
  }
  apply_abnormal_route(report, why);
  return report;
}

}  // namespace srweyl::fundamental
