#ifndef BESSELORBIT_REPORT_HPP_
#define BESSELORBIT_REPORT_HPP_

#include <string>

#include "besselorbit/criteria.hpp"

namespace besselorbit {

// Stable machine-readable report (schema_version 1). Identical inputs give
// byte-identical output.
std::string verdict_to_json(const BesselVerdict& verdict);

// CSV rows: criterion,param,value,aux.
std::string verdict_to_csv(const BesselVerdict& verdict);

// Human-readable summary; each verdict line names the criterion it rests on.
std::string verdict_to_text(const BesselVerdict& verdict);

std::string report_to_json(const CriterionReport& report);
std::string report_to_csv(const CriterionReport& report);

}  // namespace besselorbit

#endif  // BESSELORBIT_REPORT_HPP_
