#include "slopedesign/report.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace slopedesign {

namespace {

std::string number(double v) { return fmt::format("{:#.17g}", v); }

nlohmann::json design_arrays(const Design& d, const std::string& prefix) {
  return {{prefix + "_points", d.points}, {prefix + "_weights", d.weights}};
}

}  // namespace

nlohmann::json endpoint_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

nlohmann::json region_json(const AdmissibleRegion& region) {
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : region.intervals) intervals.push_back({endpoint_json(iv.lo), endpoint_json(iv.hi)});
  nlohmann::json roots = nlohmann::json::object();
  for (std::size_t i = 0; i < region.boundary_roots.size(); ++i) {
    roots[std::to_string(i + 1)] = region.boundary_roots[i];
  }
  return {{"intervals", intervals}, {"roots", roots}};
}

std::string verdict(const ElfvingCertificate& cert) { return cert.verifies() ? "verified" : "failed"; }

nlohmann::json certificate_json(const ElfvingCertificate& cert) {
  return {
      {"p", cert.p},
      {"h", cert.h},
      {"margins",
       {{"condition1", cert.condition1_margin},
        {"condition2", cert.condition2_residuals},
        {"condition3", cert.condition3_residual}}},
      {"interval", cert.interval + 1},
      {"verdict", verdict(cert)},
  };
}

nlohmann::json oracle_json(const OracleReport& report) {
  nlohmann::json j = {
      {"status", report.status},
      {"closed_form_variance", std::isnan(report.closed_form_variance) ? nlohmann::json(nullptr)
                                                                       : nlohmann::json(report.closed_form_variance)},
      {"lp_variance", report.lp_variance},
      {"restricted_variance", report.restricted_variance},
      {"max_weight_discrepancy", report.max_weight_discrepancy},
      {"lp_relative_gap", report.lp_relative_gap},
      {"outside_threshold", report.outside_threshold},
      {"agrees", report.agrees},
      {"closed_form_suboptimal", report.closed_form_suboptimal},
  };
  j.update(design_arrays(report.lp_design, "lp"));
  j.update(design_arrays(report.restricted_design, "restricted"));
  return j;
}

Design design_from_json(const nlohmann::json& doc, double a, double sum_tol) {
  const nlohmann::json* body = &doc;
  if (doc.is_object() && doc.contains("result") && !doc.contains("points")) body = &doc.at("result");
  if (!body->is_object() || !body->contains("points") || !body->contains("weights"))
    throw DataError("design needs \"points\" and \"weights\" arrays");
  Design d;
  try {
    d.points = body->at("points").get<std::vector<double>>();
    d.weights = body->at("weights").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("design arrays must hold numbers: ") + e.what());
  }
  try {
    d.validate(a, sum_tol);
  } catch (const InvalidProblem& e) {
    throw DataError(e.what());
  }
  return d;
}

std::pair<double, double> weightderiv_window(const DesignProblem& problem) {
  double lo = 0.0;
  double hi = problem.a;
  for (const auto& roots : admissible_region(problem).boundary_roots) {
    for (double r : roots) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  const double pad = 0.1 * (hi - lo);
  return {lo - pad, hi + pad};
}

std::string plot_csv(const DesignProblem& problem, PlotKind kind, std::size_t samples) {
  if (samples < 2) throw InvalidProblem("plot needs at least two samples");
  std::string out;
  auto sample_at = [samples](double lo, double hi, std::size_t k) {
    if (k + 1 == samples) return hi;
    return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(samples - 1);
  };

  if (kind == PlotKind::extremal) {
    const Poly s = extremal_polynomial(problem);
    out += "x,S" + std::to_string(problem.n) + "\n";
    for (std::size_t k = 0; k < samples; ++k) {
      const double x = sample_at(0.0, problem.a, k);
      out += number(x) + "," + number(s(x)) + "\n";
    }
    return out;
  }

  const auto derivs = weight_functions(problem);
  const auto [lo, hi] = weightderiv_window(problem);
  out += "z";
  for (std::size_t i = 0; i < derivs.size(); ++i) out += ",L" + std::to_string(i + 1) + "p";
  out += "\n";
  for (std::size_t k = 0; k < samples; ++k) {
    const double z = sample_at(lo, hi, k);
    out += number(z);
    for (const auto& d : derivs) out += "," + number(d(z));
    out += "\n";
  }
  return out;
}

}  // namespace slopedesign
