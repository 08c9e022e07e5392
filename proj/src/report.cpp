#include "besselorbit/report.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

namespace besselorbit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json json_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return value;
}

ordered_json report_json(const CriterionReport& report) {
  ordered_json obj;
  obj["id"] = report.id;
  obj["constant"] = json_number(report.constant);
  obj["divergent"] = report.divergent;
  obj["certified"] = report.certified;
  obj["citation"] = report.citation;
  if (!report.note.empty()) obj["note"] = report.note;
  ordered_json grid = ordered_json::array();
  for (const auto& sample : report.grid) {
    grid.push_back({{"param", json_number(sample.param)},
                    {"value", json_number(sample.value)},
                    {"aux", json_number(sample.aux)}});
  }
  obj["grid"] = grid;
  return obj;
}

void report_csv(std::ostream& out, const CriterionReport& report) {
  for (const auto& sample : report.grid) {
    out << report.id << ',' << sample.param << ',' << sample.value << ','
        << sample.aux << '\n';
  }
}

}  // namespace

std::string verdict_to_json(const BesselVerdict& verdict) {
  ordered_json obj;
  obj["schema_version"] = 1;
  ordered_json v;
  v["status"] = to_string(verdict.status);
  if (verdict.status == BesselStatus::kBessel) {
    v["bound"] = json_number(verdict.bound);
    v["bound_is_estimate"] = verdict.bound_is_estimate;
  }
  if (!verdict.witness.empty()) v["witness"] = verdict.witness;
  v["operator_class"] = to_string(verdict.operator_class);
  obj["verdict"] = v;
  ordered_json criteria = ordered_json::array();
  for (const auto& report : verdict.reports) {
    criteria.push_back(report_json(report));
  }
  obj["criteria"] = criteria;
  ordered_json profile = ordered_json::array();
  for (const auto& [n, norm] : verdict.gram_profile) {
    profile.push_back({{"n", n}, {"norm", json_number(norm)}});
  }
  obj["gram_profile"] = profile;
  return obj.dump(2) + "\n";
}

std::string verdict_to_csv(const BesselVerdict& verdict) {
  std::ostringstream out;
  out.precision(17);
  out << "criterion,param,value,aux\n";
  for (const auto& report : verdict.reports) {
    report_csv(out, report);
  }
  return out.str();
}

std::string verdict_to_text(const BesselVerdict& verdict) {
  std::ostringstream out;
  out.precision(12);
  out << "verdict: " << to_string(verdict.status) << '\n';
  out << "operator class: " << to_string(verdict.operator_class) << '\n';
  if (verdict.status == BesselStatus::kBessel) {
    out << "Bessel bound: " << verdict.bound
        << (verdict.bound_is_estimate ? " (grid estimate)" : " (certified)")
        << '\n';
  }
  if (!verdict.witness.empty()) {
    out << "witness: " << verdict.witness << '\n';
  }
  out << '\n';
  for (const auto& report : verdict.reports) {
    out << report.id << ": ";
    if (std::isinf(report.constant)) {
      out << "infinite";
    } else {
      out << report.constant;
    }
    if (report.divergent) out << " [divergent]";
    if (report.certified) out << " [certified]";
    out << "\n    " << report.citation << '\n';
    if (!report.note.empty()) out << "    note: " << report.note << '\n';
  }
  if (!verdict.gram_profile.empty()) {
    out << "gram profile:";
    for (const auto& [n, norm] : verdict.gram_profile) {
      out << "  ||G_" << n << "|| = " << norm;
    }
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const CriterionReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string report_to_csv(const CriterionReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "criterion,param,value,aux\n";
  report_csv(out, report);
  return out.str();
}

}  // namespace besselorbit
