#include "hwspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "cli_io";

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::string CsvTable::text() const {
  std::ostringstream out;
  out << "# schema_version=" << kSchemaVersion << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw Error(ErrorCode::kSizeMismatch, kModule, "CSV row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const { write_text(path, text()); }

Json report_header(const RunConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["operation"] = std::string(to_string(c.op));
  j["config"] = to_text(c);
  return j;
}

RunConfig config_from_report(const Json& report) {
  if (!report.contains("config") || !report["config"].is_string()) {
    throw Error(ErrorCode::kMalformedValue, kModule, "report carries no config echo");
  }
  return parse_config(report["config"].get<std::string>());
}

Json to_json(const RieszReport& r) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["threshold"] = json_number(r.threshold);
  j["periodization_l2"] = {{"inf", json_number(r.a_l2)}, {"sup", json_number(r.b_l2)},
                           {"tail_bound", json_number(r.tail_bound_l2)}};
  j["periodization_hw"] = {{"inf", json_number(r.a_hw)}, {"sup", json_number(r.b_hw)},
                           {"tail_bound", json_number(r.tail_bound_hw)}};
  j["gram_constant"] = json_number(r.oracle_constant);
  j["grid_points"] = r.grid_points;
  j["section_size"] = r.section_size;
  j["gram_hw"] = {{"eig_min", json_number(r.gram_eig_min)}, {"eig_max", json_number(r.gram_eig_max)},
                  {"condition", json_number(r.gram_condition)}};
  j["gram_l2"] = {{"eig_min", json_number(r.l2_gram_eig_min)}, {"eig_max", json_number(r.l2_gram_eig_max)}};
  return j;
}

Json to_json(const KernelDiagnostics& d) {
  return Json{{"phi_at_zero", json_number(d.phi_at_zero)},
              {"norm_sq", json_number(d.norm_sq)},
              {"norm_residual", json_number(d.norm_residual)},
              {"hermitian_residual", json_number(d.hermitian_residual)}};
}

Json to_json(const ConvergenceStudy& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    rows.push_back({{"radius", json_number(r.radius)},
                    {"section_size", r.section_size},
                    {"hw_error", json_number(r.hw_error)},
                    {"sup_error", json_number(r.sup_error)},
                    {"gram_condition", json_number(r.gram_condition)}});
  }
  return Json{{"embedding_constant", json_number(s.embedding_constant)}, {"monotone", s.monotone}, {"rows", rows}};
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, kModule, "cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, kModule, "write to '" + path + "' failed");
}

void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

std::map<long, cplx> read_lattice_data(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, kModule, "cannot open data file '" + path + "'");
  std::map<long, cplx> out;
  std::string line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const bool header_allowed = first_row;
    first_row = false;
    std::istringstream fields(line);
    std::string a, b, c;
    std::getline(fields, a, ',');
    std::getline(fields, b, ',');
    std::getline(fields, c, ',');
    try {
      std::size_t used = 0;
      const long index = std::stol(a, &used);
      const double re = std::stod(b);
      const double im = c.empty() ? 0.0 : std::stod(c);
      out[index] = {re, im};
    } catch (const std::exception&) {
      if (header_allowed) continue;
      throw Error(ErrorCode::kMalformedValue, kModule,
                  path + ":" + std::to_string(line_no) + ": expected index,re,im");
    }
  }
  return out;
}

}  // namespace hwspace
