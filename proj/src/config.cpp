#include "hwspace/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "cli_io";

[[noreturn]] void malformed(const std::string& key, const std::string& value, const std::string& why) {
  throw Error(ErrorCode::kMalformedValue, kModule, "key '" + key + "': malformed value '" + value + "': " + why);
}

std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) malformed(key, text, "expected a number");
  return v;
}

long to_long(const std::string& key, const std::string& text) {
  long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc{} || ptr != end) malformed(key, text, "expected an integer");
  return v;
}

std::pair<std::string, std::string> head_tail(const std::string& key, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) malformed(key, spec, "expected '<kind>:<parameters>'");
  return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::vector<int> int_list(const std::string& key, const std::string& text, char sep) {
  std::vector<int> out;
  for (const auto& part : split(text, sep)) out.push_back(static_cast<int>(to_long(key, part)));
  return out;
}

std::vector<double> double_list(const std::string& key, const std::string& text, std::size_t arity) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(to_double(key, part));
  if (arity != 0 && out.size() != arity) {
    malformed(key, text, "expected " + std::to_string(arity) + " comma-separated numbers");
  }
  return out;
}

const std::map<std::string_view, Operation>& operations() {
  static const std::map<std::string_view, Operation> kOps{
      {"kernel", Operation::kKernel},   {"riesz", Operation::kRiesz},     {"lagrange", Operation::kLagrange},
      {"interp", Operation::kInterp},   {"project", Operation::kProject}, {"converge", Operation::kConverge},
      {"diagnose", Operation::kDiagnose}};
  return kOps;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> kSetters{
      {"group", [](RunConfig& c, const std::string& v) { c.group = v; }},
      {"lattice", [](RunConfig& c, const std::string& v) { c.lattice = v; }},
      {"weight", [](RunConfig& c, const std::string& v) { c.weight = v; }},
      {"op",
       [](RunConfig& c, const std::string& v) {
         const auto it = operations().find(v);
         if (it == operations().end()) malformed("op", v, "unknown operation");
         c.op = it->second;
       }},
      {"input", [](RunConfig& c, const std::string& v) { c.input = v; }},
      {"data", [](RunConfig& c, const std::string& v) { c.data = v; }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
      {"window", [](RunConfig& c, const std::string& v) { c.window = to_long("window", v); }},
      {"radii",
       [](RunConfig& c, const std::string& v) { c.radii = v.empty() ? std::vector<double>{} : double_list("radii", v, 0); }},
      {"seed",
       [](RunConfig& c, const std::string& v) {
         std::uint64_t s = 0;
         const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
         if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) malformed("seed", v, "expected an unsigned integer");
         c.seed = s;
       }},
      {"samples", [](RunConfig& c, const std::string& v) { c.samples = static_cast<int>(to_long("samples", v)); }},
      {"nodes_per_panel",
       [](RunConfig& c, const std::string& v) { c.nodes_per_panel = static_cast<int>(to_long("nodes_per_panel", v)); }},
      {"tol.riesz", [](RunConfig& c, const std::string& v) { c.tol.riesz_threshold = to_double("tol.riesz", v); }},
      {"tol.division", [](RunConfig& c, const std::string& v) { c.tol.division_guard = to_double("tol.division", v); }},
      {"tol.degenerate",
       [](RunConfig& c, const std::string& v) { c.tol.degenerate_condition = to_double("tol.degenerate", v); }},
      {"tol.refinement",
       [](RunConfig& c, const std::string& v) { c.tol.refinement_condition = to_double("tol.refinement", v); }},
      {"tol.submultiplicative",
       [](RunConfig& c, const std::string& v) { c.tol.submultiplicative_slack = to_double("tol.submultiplicative", v); }},
      {"tol.stability", [](RunConfig& c, const std::string& v) { c.tol.stability = to_double("tol.stability", v); }},
      {"tol.tail", [](RunConfig& c, const std::string& v) { c.tol.tail_tolerance = to_double("tol.tail", v); }},
  };
  return kSetters;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + shortest(v[i]);
  return out;
}

}  // namespace

std::string_view to_string(Operation op) {
  for (const auto& [name, value] : operations()) {
    if (value == op) return name;
  }
  return "unknown";
}

std::string to_text(const RunConfig& c) {
  std::ostringstream out;
  out << "group=" << c.group << '\n'
      << "lattice=" << c.lattice << '\n'
      << "weight=" << c.weight << '\n'
      << "op=" << to_string(c.op) << '\n'
      << "input=" << c.input << '\n'
      << "data=" << c.data << '\n'
      << "output=" << c.output << '\n'
      << "window=" << c.window << '\n'
      << "radii=" << join(c.radii) << '\n'
      << "seed=" << c.seed << '\n'
      << "samples=" << c.samples << '\n'
      << "nodes_per_panel=" << c.nodes_per_panel << '\n'
      << "tol.riesz=" << shortest(c.tol.riesz_threshold) << '\n'
      << "tol.division=" << shortest(c.tol.division_guard) << '\n'
      << "tol.degenerate=" << shortest(c.tol.degenerate_condition) << '\n'
      << "tol.refinement=" << shortest(c.tol.refinement_condition) << '\n'
      << "tol.submultiplicative=" << shortest(c.tol.submultiplicative_slack) << '\n'
      << "tol.stability=" << shortest(c.tol.stability) << '\n'
      << "tol.tail=" << shortest(c.tol.tail_tolerance) << '\n';
  return out.str();
}

RunConfig parse_config(std::string_view text, const RunConfig& base) {
  RunConfig c = base;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorCode::kMalformedValue, kModule, "expected key=value, got '" + token + "'");
      }
      const std::string key = token.substr(0, eq);
      const auto it = setters().find(key);
      if (it == setters().end()) throw Error(ErrorCode::kUnknownKey, kModule, "unknown key '" + key + "'");
      it->second(c, token.substr(eq + 1));
    }
  }
  validate(c);
  return c;
}

GroupSpec parse_group(const std::string& spec, int nodes_per_panel) {
  const auto [kind, params] = head_tail("group", spec);
  GroupSpec g;
  if (kind == "zn") {
    g = GroupSpec::cyclic(int_list("group", params, 'x'));
  } else if (kind == "rline") {
    const auto p = double_list("group", params, 4);
    g = GroupSpec::real_line(p[0], p[1], p[2], p[3], nodes_per_panel);
  } else {
    malformed("group", spec, "kind must be zn or rline");
  }
  try {
    g.validate();
  } catch (const Error& e) {
    malformed("group", spec, e.what());
  }
  return g;
}

LatticeSpec parse_lattice(const std::string& spec) {
  const auto [kind, params] = head_tail("lattice", spec);
  if (kind == "div") return LatticeSpec::cyclic(int_list("lattice", params, 'x'));
  if (kind == "alpha") return LatticeSpec::real_line(to_double("lattice", params));
  malformed("lattice", spec, "kind must be div or alpha");
}

void check_weight_syntax(const std::string& spec) {
  const auto [kind, params] = head_tail("weight", spec);
  if (kind == "poly") {
    double_list("weight", params, 1);
  } else if (kind == "subexp") {
    const auto p = double_list("weight", params, 3);
    if (!(p[0] > 0.0) || !(p[1] > 0.0 && p[1] < 1.0)) malformed("weight", spec, "need a > 0 and 0 < delta < 1");
  } else if (kind == "box") {
    if (!(double_list("weight", params, 1)[0] > 0.0)) malformed("weight", spec, "band must be positive");
  } else if (kind == "table") {
    if (params.empty()) malformed("weight", spec, "table needs a file path");
  } else {
    malformed("weight", spec, "kind must be poly, subexp, box or table");
  }
}

Weight parse_weight(const std::string& spec) {
  check_weight_syntax(spec);
  const auto [kind, params] = head_tail("weight", spec);
  if (kind == "poly") return Weight::polynomial(to_double("weight", params));
  if (kind == "subexp") {
    const auto p = double_list("weight", params, 3);
    return Weight::subexponential(p[0], p[1], p[2]);
  }
  if (kind == "box") return Weight::box(to_double("weight", params));
  return Weight::table_from_csv(params);
}

void validate(const RunConfig& c) {
  const GroupSpec g = parse_group(c.group, c.nodes_per_panel);
  const LatticeSpec lat = parse_lattice(c.lattice);
  check_weight_syntax(c.weight);
  if (c.window < 0) malformed("window", std::to_string(c.window), "must be nonnegative");
  if (c.samples < 1) malformed("samples", std::to_string(c.samples), "must be positive");
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    if (!(c.radii[i] >= 0.0) || (i > 0 && c.radii[i] <= c.radii[i - 1])) {
      malformed("radii", join(c.radii), "radii must be nonnegative and strictly increasing");
    }
  }
  if (!c.data.empty() && c.data != "zero" && c.data.rfind("delta:", 0) != 0 && c.data.rfind("random:", 0) != 0) {
    malformed("data", c.data, "expected zero, delta:<index> or random:<seed>");
  }
  if (c.data.rfind("delta:", 0) == 0) to_long("data", c.data.substr(6));
  if (c.data.rfind("random:", 0) == 0) to_long("data", c.data.substr(7));
  try {
    validate(g, lat);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInconsistentLattice) {
      const std::string what = e.what();
      throw Error(ErrorCode::kInconsistentLattice, kModule, "key 'lattice': " + what.substr(e.module().size() + 2));
    }
    throw;
  }
}

std::string_view config_help() {
  return R"(Configuration keys (key=value; flags override the --config file):
  group=zn:N[xM...] | rline:Gmax,dgamma,Xmax,dx      default zn:64
  lattice=div:d[xe...] | alpha:a                      default div:4
  weight=poly:s | subexp:a,delta,s | box:Omega | table:path.csv   default poly:1
  op=kernel|riesz|lagrange|interp|project|converge|diagnose       default kernel
  input=path.csv   lattice data rows index,re,im (interp, converge)
  data=zero | delta:i | random:seed                   default delta:0 (used without input)
  output=dir                                          default .
  window=n         real-line lattice indices |m| <= n  default 32
  radii=r1,r2,...  finite-section radii (converge)     default automatic
  seed=n           default 1
  samples=n        random elements for sampling suites default 500
  nodes_per_panel=n   Gauss-Legendre nodes per dual panel on the real line, default 8
  tol.riesz=1e-8 tol.division=1e-8 tol.degenerate=1e12 tol.refinement=1e8
  tol.submultiplicative=1e-12 tol.stability=1e-9 tol.tail=1e-6
Exit codes: 0 success, 1 error, 2 refusal (frame, not a Riesz basis), 3 unknown key,
  4 malformed value, 5 inconsistent group/lattice pair.
)";
}

}  // namespace hwspace
