#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaussembed/classifier.hpp"

namespace gaussembed {

// Round-trip-exact decimal formatting (17 significant digits, negative zero
// normalized).  All JSON/CSV reals go through this so repeated runs are
// byte-identical.
std::string fmt_real(double x);

inline constexpr const char* kCsvHeader =
    "family,alpha,lambda,u,v,w,T,S,gauss_status,derived_status,verdict,flag";

std::string csv_row(const ScanRow& row);
std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_json(const std::vector<ScanRow>& rows);

std::string curvature_to_json(const CurvatureTensor& R, const NablaR& dR);
std::string gauss_to_json(const GaussOutcome& outcome);
std::string derived_to_json(const DerivedObstructionReport& report);
std::string classify_to_json(const ClassifierReport& report);
std::string classify_to_text(const ClassifierReport& report);

}  // namespace gaussembed
