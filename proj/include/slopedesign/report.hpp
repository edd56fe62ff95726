#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include <json.hpp>

#include "slopedesign/designs.hpp"
#include "slopedesign/elfving.hpp"
#include "slopedesign/oracle.hpp"

namespace slopedesign {

inline constexpr std::string_view kSchemaVersion = "1";

/// Malformed or inconsistent input data (as opposed to bad flags).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Finite numbers stay numbers; infinities become "inf" / "-inf".
nlohmann::json endpoint_json(double v);

nlohmann::json region_json(const AdmissibleRegion& region);

/// "verified" or "failed". The CLI adds "z_outside_region" when certify throws.
std::string verdict(const ElfvingCertificate& cert);

nlohmann::json certificate_json(const ElfvingCertificate& cert);

nlohmann::json oracle_json(const OracleReport& report);

/// Reads {points, weights} from a bare object or from the "result" member of
/// a design envelope. Throws DataError on malformed content or when the
/// weights do not sum to one within sum_tol.
Design design_from_json(const nlohmann::json& doc, double a, double sum_tol = 1e-9);

enum class PlotKind { extremal, weightderivs };

/// Plot curves as CSV: header row, comma separated, 17 significant digits,
/// LF line endings.
std::string plot_csv(const DesignProblem& problem, PlotKind kind, std::size_t samples = 500);

/// Window [lo, hi] used for the weight-derivative curves: all boundary roots
/// and [0, a], padded by 10% of the span on both sides.
std::pair<double, double> weightderiv_window(const DesignProblem& problem);

}  // namespace slopedesign
