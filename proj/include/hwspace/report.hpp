#pragma once

// CSV and JSON emission with a schema version on every artifact, plus lattice-data ingestion.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwspace/config.hpp"
#include "hwspace/finite_section.hpp"
#include "hwspace/kernel.hpp"
#include "hwspace/lattice_analysis.hpp"

namespace hwspace {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// %.17g; non-finite values as inf, -inf, nan.
std::string format_number(double v);
// Finite numbers stay numbers, non-finite ones become strings.
Json json_number(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // First line "# schema_version=<n>", then the header and rows.
  std::string text() const;
  void write(const std::string& path) const;
};

// schema_version, operation and the config echo (parsed back by parse_config).
Json report_header(const RunConfig& c);
RunConfig config_from_report(const Json& report);

Json to_json(const RieszReport& r);
Json to_json(const KernelDiagnostics& d);
Json to_json(const ConvergenceStudy& s);

void write_text(const std::string& path, const std::string& text);
void write_json(const std::string& path, const Json& j);

// Rows "index,re,im"; a non-numeric first line is treated as a header.
std::map<long, cplx> read_lattice_data(const std::string& path);

}  // namespace hwspace
