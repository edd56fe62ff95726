// slopedesign: optimal designs for estimating the slope of a polynomial
// regression without intercept on [0, a].
//
// Exit codes: 0 success, 2 z not covered, 64 usage, 65 bad input data,
// 70 internal numerical failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slopedesign/designs.hpp"
#include "slopedesign/elfving.hpp"
#include "slopedesign/oracle.hpp"
#include "slopedesign/report.hpp"

namespace {

using nlohmann::json;
using namespace slopedesign;

constexpr int kExitOk = 0;
constexpr int kExitNotCovered = 2;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitInternal = 70;

struct Common {
  unsigned n = 0;
  double a = 1.0;
  double tol_root = 1e-12;
  double tol_cert = 1e-8;
  std::size_t grid = 2001;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

json envelope(const std::string& command, json inputs, json result, const std::vector<std::string>& warnings) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"inputs", std::move(inputs)},
          {"result", std::move(result)},
          {"warnings", warnings}};
}

void emit(const json& doc) { std::cout << doc.dump(2) << '\n'; }

DesignProblem make_problem(const Common& opt) {
  try {
    return DesignProblem(opt.n, opt.a);
  } catch (const InvalidProblem& e) {
    throw UsageError(e.what());
  }
}

// Payload for one z; second member is false when z is not covered.
std::pair<json, bool> design_payload(const DesignProblem& problem, const AdmissibleRegion& region, double z,
                                     const Common& opt) {
  try {
    const Design d = optimal_design(problem, z, region);
    CertifyOptions co;
    co.grid = opt.grid;
    co.tol = opt.tol_cert;
    co.root_tol = opt.tol_root;
    const ElfvingCertificate cert = certify(problem, z, d, co);
    return {{{"covered", true},
             {"z", z},
             {"points", d.points},
             {"weights", d.weights},
             {"variance", variance(d, slope_vector(z, problem.n))},
             {"certificate", certificate_json(cert)}},
            true};
  } catch (const BoundaryPoint& e) {
    return {{{"covered", false}, {"z", z}, {"reason", "boundary_point"}, {"endpoint", e.endpoint},
             {"region", region_json(region)["intervals"]}},
            false};
  } catch (const NotCovered&) {
    return {{{"covered", false}, {"z", z}, {"reason", "outside_region"}, {"region", region_json(region)["intervals"]}},
            false};
  }
}

json common_inputs(const Common& opt) {
  return {{"n", opt.n}, {"a", opt.a}, {"tol_root", opt.tol_root}, {"tol_cert", opt.tol_cert}, {"grid", opt.grid}};
}

int run_design(const Common& opt, const std::optional<double>& z, const std::vector<double>& z_list) {
  const DesignProblem problem = make_problem(opt);
  const AdmissibleRegion region = admissible_region(problem, opt.tol_root);
  json inputs = common_inputs(opt);
  std::vector<std::string> warnings;

  if (!z_list.empty()) {
    inputs["z_list"] = z_list;
    json results = json::array();
    bool all_covered = true;
    for (double zz : z_list) {
      auto [payload, covered] = design_payload(problem, region, zz, opt);
      if (!covered) {
        all_covered = false;
        warnings.push_back("z = " + json(zz).dump() + " is not covered by the closed form");
      }
      results.push_back(std::move(payload));
    }
    emit(envelope("design", inputs, results, warnings));
    return all_covered ? kExitOk : kExitNotCovered;
  }

  inputs["z"] = *z;
  auto [payload, covered] = design_payload(problem, region, *z, opt);
  if (!covered) warnings.push_back("z is not covered by the closed form; no design returned");
  emit(envelope("design", inputs, payload, warnings));
  return covered ? kExitOk : kExitNotCovered;
}

int run_region(const Common& opt) {
  const DesignProblem problem = make_problem(opt);
  emit(envelope("region", common_inputs(opt), region_json(admissible_region(problem, opt.tol_root)), {}));
  return kExitOk;
}

json read_json_source(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open design file: " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("malformed JSON: ") + e.what());
  }
}

int run_check(const Common& opt, const std::string& path, double z) {
  const DesignProblem problem = make_problem(opt);
  const Design d = design_from_json(read_json_source(path), problem.a);
  json inputs = common_inputs(opt);
  inputs["z"] = z;
  inputs["design_file"] = path;

  const double var = variance(d, slope_vector(z, problem.n));
  CertifyOptions co;
  co.grid = opt.grid;
  co.tol = opt.tol_cert;
  co.root_tol = opt.tol_root;
  try {
    const ElfvingCertificate cert = certify(problem, z, d, co);
    json result = certificate_json(cert);
    result["variance"] = std::isfinite(var) ? json(var) : json("inf");
    emit(envelope("check", inputs, result, {}));
    return kExitOk;
  } catch (const ZOutsideRegion&) {
    json result = {{"verdict", "z_outside_region"}, {"variance", std::isfinite(var) ? json(var) : json("inf")}};
    emit(envelope("check", inputs, result, {"z is not interior to the admissible region"}));
    return kExitNotCovered;
  }
}

int run_oracle(const Common& opt, double z) {
  const DesignProblem problem = make_problem(opt);
  const OracleReport report = compare(problem, z, GridSpec{opt.grid});
  json inputs = common_inputs(opt);
  inputs["z"] = z;
  std::vector<std::string> warnings;
  if (report.status != "covered") warnings.push_back("closed form does not apply at this z");
  emit(envelope("oracle", inputs, oracle_json(report), warnings));
  return kExitOk;
}

int run_plotdata(const Common& opt, const std::string& what, std::size_t samples) {
  const DesignProblem problem = make_problem(opt);
  const PlotKind kind = what == "extremal" ? PlotKind::extremal : PlotKind::weightderivs;
  try {
    std::cout << plot_csv(problem, kind, samples);
  } catch (const InvalidProblem& e) {
    throw UsageError(e.what());
  }
  return kExitOk;
}

void add_problem_flags(CLI::App* cmd, Common& opt, bool with_tolerances = true) {
  cmd->add_option("--n", opt.n, "polynomial degree (>= 1)")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--a", opt.a, "design interval is [0, a]")->required();
  if (!with_tolerances) return;
  cmd->add_option("--tol-root", opt.tol_root, "root bracketing tolerance")->capture_default_str();
  cmd->add_option("--tol-cert", opt.tol_cert, "certificate tolerance")->capture_default_str();
  cmd->add_option("--grid", opt.grid, "grid size for condition (1) and the LP oracle")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal designs for estimating the slope of a polynomial regression without intercept"};
  app.require_subcommand(1);

  Common opt;
  std::optional<double> z;
  std::vector<double> z_list;
  std::string design_file;
  std::string what;
  std::size_t samples = 500;

  auto* design = app.add_subcommand("design", "optimal design and its certificate at z");
  add_problem_flags(design, opt);
  auto* z_opt = design->add_option("--z", z, "target point");
  auto* z_list_opt = design->add_option("--z-list", z_list, "comma separated target points")->delimiter(',');
  z_opt->excludes(z_list_opt);

  auto* region = app.add_subcommand("region", "admissible region of target points");
  add_problem_flags(region, opt);

  auto* check = app.add_subcommand("check", "verify a design against the optimality certificate");
  add_problem_flags(check, opt);
  check->add_option("--design-file", design_file, "JSON design ('-' reads standard input)")->required();
  double check_z = 0.0;
  check->add_option("--z", check_z, "target point")->required();

  auto* oracle = app.add_subcommand("oracle", "cross-check the closed form against numerical oracles");
  add_problem_flags(oracle, opt);
  double oracle_z = 0.0;
  oracle->add_option("--z", oracle_z, "target point")->required();

  auto* plot = app.add_subcommand("plotdata", "CSV curves for plotting");
  add_problem_flags(plot, opt, false);
  plot->add_option("--what", what, "extremal | weightderivs")
      ->required()
      ->check(CLI::IsMember({"extremal", "weightderivs"}));
  plot->add_option("--samples", samples, "number of sample points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*design) {
      if (!z && z_list.empty()) throw UsageError("design needs --z or --z-list");
      return run_design(opt, z, z_list);
    }
    if (*region) return run_region(opt);
    if (*check) return run_check(opt, design_file, check_z);
    if (*oracle) return run_oracle(opt, oracle_z);
    if (*plot) return run_plotdata(opt, what, samples);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
