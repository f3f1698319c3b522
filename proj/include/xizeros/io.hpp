// File formats: coefficient-sequence JSON, zero-list CSV ("xizeros/1"),
// CountReport JSON ("xizeros/1"), verification JSON ("xizeros-verify/1").
// All numbers print via shortest-round-trip to_chars, so identical runs
// produce byte-identical artifacts.

#pragma once

#include <charconv>
#include <sstream>
#include <string>

#include <json.hpp>

#include "xizeros/theorems.hpp"
#include "xizeros/zerocount.hpp"

namespace xizeros {

using nlohmann::json;

inline std::string fmt_double(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, end);
}

inline constexpr const char* kZeroSchema = "xizeros/1";
inline constexpr const char* kVerifySchema = "xizeros-verify/1";

// ---------------------------------------------------------------------------
// CoefficientSequence <-> JSON  {"coeffs": [[re, im], ...]}
// ---------------------------------------------------------------------------

inline json coefficients_to_json(const CoefficientSequence& F) {
  json arr = json::array();
  for (const cxd& a : F.coeffs()) arr.push_back({a.real(), a.imag()});
  return json{{"coeffs", arr}};
}

inline CoefficientSequence coefficients_from_json(const json& j) {
  if (!j.contains("coeffs") || !j["coeffs"].is_array())
    throw std::invalid_argument("coefficient JSON must be {\"coeffs\": [[re, im], ...]}");
  std::vector<cxd> coeffs;
  for (const json& e : j["coeffs"]) {
    if (e.is_number())
      coeffs.push_back(cxd(e.get<double>(), 0.0));
    else if (e.is_array() && e.size() == 2)
      coeffs.push_back(cxd(e[0].get<double>(), e[1].get<double>()));
    else
      throw std::invalid_argument("coefficient entries must be numbers or [re, im] pairs");
  }
  return CoefficientSequence(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Zero lists as CSV
// ---------------------------------------------------------------------------

// C_F flavor: re, im, multiplicity, on_line, method, residual.
inline std::string zeros_to_csv(const std::vector<ZeroRecord>& zeros) {
  std::string out = "# schema=";
  out += kZeroSchema;
  out += "\nre,im,multiplicity,on_line,method,residual\n";
  for (const ZeroRecord& z : zeros) {
    out += fmt_double(z.position.real()) + "," + fmt_double(z.position.imag()) + "," +
           std::to_string(z.multiplicity) + "," + (z.on_line ? "1" : "0") + "," +
           method_name(z.method) + "," + fmt_double(z.residual) + "\n";
  }
  return out;
}

// psi_{F,k} flavor: re, im, multiplicity, method, residual.
inline std::string dirichlet_zeros_to_csv(const std::vector<ZeroRecord>& zeros) {
  std::string out = "# schema=";
  out += kZeroSchema;
  out += "\nre,im,multiplicity,method,residual\n";
  for (const ZeroRecord& z : zeros) {
    out += fmt_double(z.position.real()) + "," + fmt_double(z.position.imag()) + "," +
           std::to_string(z.multiplicity) + ",winding+polish," + fmt_double(z.residual) + "\n";
  }
  return out;
}

// Reads either flavor back (header line selects the column set).
inline std::vector<ZeroRecord> zeros_from_csv(const std::string& text) {
  std::vector<ZeroRecord> out;
  std::istringstream in(text);
  std::string line;
  bool has_on_line = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("re,", 0) == 0) {
      has_on_line = line.find("on_line") != std::string::npos;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() < 5) throw std::invalid_argument("zeros CSV: malformed row: " + line);
    ZeroRecord z;
    z.position = cxd(std::stod(fields[0]), std::stod(fields[1]));
    z.multiplicity = std::stoi(fields[2]);
    if (has_on_line) {
      z.on_line = fields[3] == "1";
      z.method = fields[4] == "line-scan" ? ZeroRecord::Method::line_scan
                                          : ZeroRecord::Method::winding;
      z.residual = std::stod(fields[5]);
    } else {
      z.on_line = std::abs(z.position.real()) <= defaults::kLineTol;
      z.method = ZeroRecord::Method::winding;
      z.residual = std::stod(fields[4]);
    }
    out.push_back(z);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports as JSON
// ---------------------------------------------------------------------------

inline json zero_to_json(const ZeroRecord& z) {
  return json{{"re", z.position.real()},
              {"im", z.position.imag()},
              {"multiplicity", z.multiplicity},
              {"on_line", z.on_line},
              {"method", method_name(z.method)},
              {"residual", z.residual},
              {"residual_trusted", z.residual_trusted}};
}

inline json count_report_to_json(const CountReport& r) {
  json hist = json::object();
  for (const auto& [mult, count] : r.histogram) hist[std::to_string(mult)] = count;
  json online = json::array(), offline = json::array();
  for (const ZeroRecord& z : r.online_zeros) online.push_back(zero_to_json(z));
  for (const ZeroRecord& z : r.offline_zeros) offline.push_back(zero_to_json(z));
  return json{{"schema", kZeroSchema},
              {"N_bar", r.N_bar},
              {"N1_bar", r.N1_bar},
              {"N0_prime", r.N0_prime},
              {"N_ki", r.N_ki},
              {"histogram", hist},
              {"T", r.T},
              {"T_requested", r.T_requested},
              {"beta", r.beta},
              {"ki_lower_edge", r.ki_lower_edge},
              {"online_zeros", online},
              {"offline_zeros", offline},
              {"unlocated_mass", r.unlocated_mass},
              {"symmetry_ok", r.symmetry_ok},
              {"convention", r.convention}};
}

inline json theorem_report_to_json(const TheoremReport& r) {
  return json{{"theorem", theorem_name(r.theorem_id)},
              {"status", r.applicable ? (r.pass ? "pass" : "fail") : "not-applicable"},
              {"pass", r.pass},
              {"applicable", r.applicable},
              {"lhs", r.lhs},
              {"rhs", r.rhs},
              {"margin", r.margin},
              {"details", r.details},
              {"inputs_digest", r.inputs_digest}};
}

inline json verification_document(const std::vector<TheoremReport>& reports) {
  json arr = json::array();
  for (const TheoremReport& r : reports) arr.push_back(theorem_report_to_json(r));
  return json{{"schema", kVerifySchema}, {"reports", arr}};
}

}  // namespace xizeros
