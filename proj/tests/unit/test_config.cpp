#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hwspace/config.hpp"
#include "hwspace/error.hpp"
#include "hwspace/kernel.hpp"
#include "hwspace/report.hpp"

using namespace hwspace;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a configuration error for: " << text);
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("configuration parsing") {
  const auto c = parse_config("group=zn:64 lattice=div:4 weight=poly:1.5 op=interp\n# comment\nradii=1,2,4 seed=9");
  CHECK(c.group == "zn:64");
  CHECK(c.weight == "poly:1.5");
  CHECK(c.op == Operation::kInterp);
  CHECK(c.radii == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(c.seed == 9);

  const auto tuned = parse_config("tol.riesz=1e-6 window=12", c);
  CHECK(tuned.tol.riesz_threshold == 1e-6);
  CHECK(tuned.window == 12);
  CHECK(tuned.group == c.group);

  const auto line = parse_config("group=rline:32,0.015625,16,0.015625 lattice=alpha:0.5 weight=box:0.5");
  CHECK(parse_group(line.group).kind == GroupKind::kRealLine);
  CHECK(parse_lattice(line.lattice) == LatticeSpec::real_line(0.5));

  // syntax is accepted; square integrability is decided when the kernel is built
  const auto low = parse_config("group=rline:32,0.015625,16,0.015625 lattice=alpha:1 weight=poly:0.4");
  const auto r = make_realization(parse_group(low.group));
  try {
    synthesize_kernel(parse_weight(low.weight), r);
    FAIL("expected not-in-L2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotInL2);
  }
}

TEST_CASE("configuration errors are distinguished") {
  CHECK(code_of("colour=blue") == ErrorCode::kUnknownKey);
  CHECK(code_of("window=many") == ErrorCode::kMalformedValue);
  CHECK(code_of("weight=poly") == ErrorCode::kMalformedValue);
  CHECK(code_of("op=fly") == ErrorCode::kMalformedValue);
  CHECK(code_of("novalue") == ErrorCode::kMalformedValue);
  try {
    parse_config("group=zn:64 lattice=div:5");
    FAIL("expected an inconsistent lattice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInconsistentLattice);
    const std::string what = e.what();
    CHECK(what.find("lattice") != std::string::npos);
    CHECK(what.find("5 does not divide 64") != std::string::npos);
  }
  const std::set<std::string_view> names{to_string(ErrorCode::kUnknownKey), to_string(ErrorCode::kMalformedValue),
                                         to_string(ErrorCode::kInconsistentLattice)};
  CHECK(names.size() == 3);
}

TEST_CASE("configuration round trip") {
  RunConfig c;
  c.group = "zn:16x24";
  c.lattice = "div:4x6";
  c.weight = "subexp:0.3,0.7,1";
  c.op = Operation::kConverge;
  c.radii = {0.5, 1.25, 3};
  c.tol.stability = 3.7e-7;
  c.data = "random:11";
  c.seed = 123456789012345ULL;
  CHECK(parse_config(to_text(c)) == c);
  CHECK(parse_config(to_text(RunConfig{})) == RunConfig{});

  const auto header = report_header(c);
  CHECK(header["schema_version"] == kSchemaVersion);
  CHECK(header["operation"] == "converge");
  const auto reparsed = Json::parse(header.dump(2));
  CHECK(config_from_report(reparsed) == c);
}

TEST_CASE("report formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(json_number(std::nan("")) == "nan");
  CHECK(json_number(2.5) == 2.5);

  CsvTable t{{"x", "y"}, {{1.0, 2.0}, {3.0, -0.5}}};
  std::istringstream lines(t.text());
  std::string first, header;
  std::getline(lines, first);
  std::getline(lines, header);
  CHECK(first == "# schema_version=1");
  CHECK(header == "x,y");
}

TEST_CASE("lattice data files") {
  const auto path = (std::filesystem::temp_directory_path() / "hwspace_lattice_data.csv").string();
  {
    std::ofstream out(path);
    out << "# schema_version=1\nindex,re,im\n0,1,0\n3,0.5,-2\n";
  }
  const auto d = read_lattice_data(path);
  REQUIRE(d.size() == 2);
  CHECK(d.at(0) == cplx{1.0, 0.0});
  CHECK(d.at(3) == cplx{0.5, -2.0});
  {
    std::ofstream out(path);
    out << "0,1,0\nindex,re,im\n";
  }
  CHECK_THROWS_AS(read_lattice_data(path), Error);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_lattice_data(path), Error);
}
