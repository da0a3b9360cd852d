#pragma once

// Run configuration: key=value text (whitespace or newline separated, '#' comments),
// validated in full before any computation starts.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hwspace/group.hpp"
#include "hwspace/tolerances.hpp"
#include "hwspace/weight.hpp"

namespace hwspace {

enum class Operation { kKernel, kRiesz, kLagrange, kInterp, kProject, kConverge, kDiagnose };

std::string_view to_string(Operation op);

struct RunConfig {
  std::string group = "zn:64";
  std::string lattice = "div:4";
  std::string weight = "poly:1";
  Operation op = Operation::kKernel;
  Tolerances tol;
  std::string input;          // data CSV (index,re,im); empty means `data` is used
  std::string data = "delta:0";
  std::string output = ".";   // output directory
  long window = 32;           // real-line lattice window |m| <= window
  std::vector<double> radii;  // finite-section radii; empty means automatic
  std::uint64_t seed = 1;
  int samples = 500;          // random elements in diagnose / sampling suites
  int nodes_per_panel = 8;

  bool operator==(const RunConfig&) const = default;
};

// One line per key, every key present; parse_config(to_text(c)) == c.
std::string to_text(const RunConfig& c);

// Keys from `text` override those already in `base`.
RunConfig parse_config(std::string_view text, const RunConfig& base = RunConfig{});

// Throws kUnknownKey / kMalformedValue / kInconsistentLattice naming the key.
void validate(const RunConfig& c);

std::string_view config_help();

GroupSpec parse_group(const std::string& spec, int nodes_per_panel = 8);
LatticeSpec parse_lattice(const std::string& spec);
// Table weights are read from disk here, so this is called at run time rather than parse time.
Weight parse_weight(const std::string& spec);
// Syntax-only check of a weight spec.
void check_weight_syntax(const std::string& spec);

}  // namespace hwspace
