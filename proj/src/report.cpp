#include "robandit/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "robandit/error.hpp"

namespace robandit {

using nlohmann::json;

namespace {

std::string exact(double v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << v;
  return os.str();
}

std::string fixed(double v, int digits) {
  if (!std::isfinite(v)) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

json nan_to_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double null_to_nan(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string axis_label(const ExperimentReport& rep, double v) {
  if (rep.axis_name == "psi") return fixed(100.0 * v, 0) + "%";
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::vector<ReportCsvRow> report_csv_rows(const ExperimentReport& rep) {
  std::vector<ReportCsvRow> rows;
  for (const auto& row : rep.rows)
    for (const auto& cell : row.cells)
      rows.push_back({rep.setting, row.axis_value, std::string(to_string(cell.method)), cell.mean, cell.std,
                      cell.n_users});
  return rows;
}

void write_report_csv(std::ostream& os, const ExperimentReport& rep) {
  os << "setting,axis_value,method,elrar_mean,elrar_std,n_users\n";
  for (const auto& r : report_csv_rows(rep))
    os << r.setting << ',' << exact(r.axis_value) << ',' << r.method << ',' << exact(r.elrar_mean) << ','
       << exact(r.elrar_std) << ',' << r.n_users << '\n';
}

std::vector<ReportCsvRow> read_report_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "setting,axis_value,method,elrar_mean,elrar_std,n_users")
    throw Error(ErrorCode::ConfigParse, "report csv: unexpected header");
  std::vector<ReportCsvRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> c;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) c.push_back(cell);
    if (c.size() != 6) throw Error(ErrorCode::ConfigParse, "report csv: expected 6 cells in '" + line + "'");
    try {
      rows.push_back({c[0], std::stod(c[1]), c[2], std::stod(c[3]), std::stod(c[4]), std::stoi(c[5])});
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ConfigParse, "report csv: bad number in '" + line + "'");
    }
  }
  return rows;
}

void write_report_markdown(std::ostream& os, const ExperimentReport& rep) {
  const std::string axis = rep.axis_name == "psi" ? "ψ" : "ν";
  os << "| " << axis << " |";
  for (Method m : kAllMethods) os << ' ' << to_string(m) << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < std::size(kAllMethods); ++i) os << "---|";
  os << '\n';

  std::vector<double> col_sum(std::size(kAllMethods), 0.0);
  std::vector<int> col_n(std::size(kAllMethods), 0);
  for (const auto& row : rep.rows) {
    os << "| " << axis_label(rep, row.axis_value) << " |";
    for (std::size_t k = 0; k < row.cells.size(); ++k) {
      const auto& c = row.cells[k];
      os << ' ' << fixed(c.mean, 1) << "±" << fixed(c.std, 2) << " |";
      if (std::isfinite(c.mean)) {
        col_sum[k] += c.mean;
        ++col_n[k];
      }
    }
    os << '\n';
  }
  if (!rep.rows.empty()) {
    os << "| Avg |";
    for (std::size_t k = 0; k < col_sum.size(); ++k)
      os << ' ' << (col_n[k] ? fixed(col_sum[k] / col_n[k], 1) : std::string("n/a")) << " |";
    os << '\n';
  }
}

json report_to_json(const ExperimentReport& rep) {
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json methods = json::array();
    for (const auto& c : row.cells) {
      json etas = json::array();
      json errors = json::array();
      for (const auto& u : c.users) {
        etas.push_back(u.eta ? json(*u.eta) : json(nullptr));
        errors.push_back(u.error);
      }
      methods.push_back({{"method", to_string(c.method)},
                         {"elrar_mean", nan_to_null(c.mean)},
                         {"elrar_std", nan_to_null(c.std)},
                         {"n_users", c.n_users},
                         {"etas", etas},
                         {"errors", errors}});
    }
    rows.push_back({{"axis_value", row.axis_value}, {"methods", methods}});
  }
  return json{{"setting", rep.setting},
              {"axis_name", rep.axis_name},
              {"fixed_psi", nan_to_null(rep.fixed_psi)},
              {"fixed_nu", nan_to_null(rep.fixed_nu)},
              {"base_seed", rep.base_seed},
              {"rows", rows}};
}

ExperimentReport report_from_json(const json& j) {
  try {
    ExperimentReport rep;
    rep.setting = j.at("setting").get<std::string>();
    rep.axis_name = j.at("axis_name").get<std::string>();
    rep.fixed_psi = null_to_nan(j.at("fixed_psi"));
    rep.fixed_nu = null_to_nan(j.at("fixed_nu"));
    rep.base_seed = j.at("base_seed").get<std::uint64_t>();
    for (const auto& jr : j.at("rows")) {
      ReportRow row;
      row.axis_value = jr.at("axis_value").get<double>();
      for (const auto& jm : jr.at("methods")) {
        ConditionResult c;
        c.method = method_from_string(jm.at("method").get<std::string>());
        c.mean = null_to_nan(jm.at("elrar_mean"));
        c.std = null_to_nan(jm.at("elrar_std"));
        c.n_users = jm.at("n_users").get<int>();
        const auto& etas = jm.at("etas");
        const auto& errors = jm.at("errors");
        for (std::size_t i = 0; i < etas.size(); ++i) {
          UserOutcome u;
          if (!etas[i].is_null()) u.eta = etas[i].get<double>();
          u.error = errors.at(i).get<std::string>();
          c.users.push_back(std::move(u));
        }
        row.cells.push_back(std::move(c));
      }
      rep.rows.push_back(std::move(row));
    }
    return rep;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, std::string("report json: ") + e.what());
  }
}

}  // namespace robandit
