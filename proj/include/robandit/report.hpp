#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "robandit/evalharness.hpp"

namespace robandit {

/// One line of the report CSV:
/// `setting,axis_value,method,elrar_mean,elrar_std,n_users`.
struct ReportCsvRow {
  std::string setting;
  double axis_value = 0.0;
  std::string method;
  double elrar_mean = 0.0;
  double elrar_std = 0.0;
  int n_users = 0;
};

std::vector<ReportCsvRow> report_csv_rows(const ExperimentReport& rep);
void write_report_csv(std::ostream& os, const ExperimentReport& rep);
std::vector<ReportCsvRow> read_report_csv(std::istream& is);

/// Table with one row per axis value, one "mean±std" column per method and a
/// trailing "Avg" row of column means.
void write_report_markdown(std::ostream& os, const ExperimentReport& rep);

/// Full report including every user's eta (null for failed users) and error.
nlohmann::json report_to_json(const ExperimentReport& rep);
ExperimentReport report_from_json(const nlohmann::json& j);

}  // namespace robandit
