// hwspace: command-line front end. One subcommand per operation; a --config file and
// individual flags compose, flags winning.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hwspace/config.hpp"
#include "hwspace/error.hpp"
#include "hwspace/finite_section.hpp"
#include "hwspace/interpolation.hpp"
#include "hwspace/kernel.hpp"
#include "hwspace/lattice_analysis.hpp"
#include "hwspace/report.hpp"

namespace {

using namespace hwspace;

enum ExitCode { kOk = 0, kFailure = 1, kRefusal = 2, kUnknownKeyExit = 3, kMalformedExit = 4, kInconsistentExit = 5 };

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kFrameRefusal: return kRefusal;
    case ErrorCode::kUnknownKey: return kUnknownKeyExit;
    case ErrorCode::kMalformedValue: return kMalformedExit;
    case ErrorCode::kInconsistentLattice: return kInconsistentExit;
    default: return kFailure;
  }
}

struct Context {
  RunConfig config;
  RealizationPtr realization;
  LatticeSpec lattice;
  Kernel kernel;
  std::filesystem::path out;
};

std::string path_in(const Context& ctx, const std::string& name) { return (ctx.out / name).string(); }

CsvTable grid_table(const Realization& r, const HwElement& f) {
  CsvTable t;
  for (int i = 0; i < r.dim(); ++i) t.columns.push_back("x" + std::to_string(i));
  t.columns.insert(t.columns.end(), {"re", "im"});
  const auto values = f.group_samples();
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto row = r.group_point(i);
    row.push_back(values[i].real());
    row.push_back(values[i].imag());
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<long> data_indices(const Context& ctx) {
  return ctx.realization->lattice_indices(ctx.lattice, ctx.config.window);
}

LatticeData lattice_data(const Context& ctx) {
  const auto& c = ctx.config;
  if (!c.input.empty()) {
    auto table = std::make_shared<std::map<long, cplx>>(read_lattice_data(c.input));
    return [table](long i) {
      const auto it = table->find(i);
      return it == table->end() ? cplx{} : it->second;
    };
  }
  if (c.data == "zero") return [](long) { return cplx{}; };
  if (c.data.rfind("delta:", 0) == 0) {
    const long at = std::stol(c.data.substr(6));
    return [at](long i) { return i == at ? cplx{1.0} : cplx{}; };
  }
  // random:<seed>: one complex Gaussian per lattice index in the window, fixed order
  const auto indices = data_indices(ctx);
  std::mt19937_64 rng(std::stoull(c.data.substr(7)));
  std::normal_distribution<double> normal;
  auto table = std::make_shared<std::map<long, cplx>>();
  for (long i : indices) {
    const double re = normal(rng);
    (*table)[i] = {re, normal(rng)};
  }
  return [table](long i) {
    const auto it = table->find(i);
    return it == table->end() ? cplx{} : it->second;
  };
}

Eigen::VectorXcd gather(const LatticeData& data, const std::vector<long>& indices) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) v[static_cast<Eigen::Index>(i)] = data(indices[i]);
  return v;
}

double max_sample_residual(const HwElement& f, const LatticeSpec& lat, const std::vector<long>& indices,
                           const Eigen::VectorXcd& data) {
  const auto values = sample(f, lat, indices);
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    worst = std::max(worst, std::abs(values[i] - data[static_cast<Eigen::Index>(i)]));
  }
  return worst;
}

int run_kernel(const Context& ctx, Json& report) {
  const auto& r = *ctx.realization;
  grid_table(r, ctx.kernel.phi()).write(path_in(ctx, "kernel.csv"));
  CsvTable hat;
  for (int i = 0; i < r.dim(); ++i) hat.columns.push_back("nu" + std::to_string(i));
  hat.columns.insert(hat.columns.end(), {"dual_weight", "phi_hat", "weight_sq"});
  for (std::size_t j = 0; j < r.dual_size(); ++j) {
    const auto nu = r.frequency(j);
    std::vector<double> row(nu.begin(), nu.end());
    const auto jj = static_cast<Eigen::Index>(j);
    row.insert(row.end(), {r.dual_weight(j), ctx.kernel.phi_hat[jj], ctx.kernel.weight_sq[jj]});
    hat.rows.push_back(std::move(row));
  }
  hat.write(path_in(ctx, "kernel_hat.csv"));
  report["diagnostics"] = to_json(diagnose_kernel(ctx.kernel));
  report["tail_bound"] = json_number(ctx.kernel.tail_bound);
  report["files"] = {"kernel.csv", "kernel_hat.csv"};
  return kOk;
}

int run_riesz(const Context& ctx, Json& report) {
  const auto rep = riesz_bounds(ctx.kernel, ctx.lattice, ctx.config.window, ctx.config.tol);
  report["riesz"] = to_json(rep);
  const auto hw = hw_periodization(ctx.kernel, ctx.lattice);
  const auto l2 = l2_periodization(ctx.kernel, ctx.lattice);
  CsvTable t;
  for (int i = 0; i < ctx.realization->dim(); ++i) t.columns.push_back("nu" + std::to_string(i));
  t.columns.insert(t.columns.end(), {"periodization_hw", "periodization_l2"});
  for (std::size_t c = 0; c < hw.values.size(); ++c) {
    auto row = hw.representatives[c];
    row.push_back(hw.values[c]);
    row.push_back(l2.values[c]);
    t.rows.push_back(std::move(row));
  }
  t.write(path_in(ctx, "periodization.csv"));
  report["files"] = {"periodization.csv"};
  return rep.verdict == RieszVerdict::kNotBoundedBelow ? kRefusal : kOk;
}

int run_lagrange(const Context& ctx, Json& report) {
  const auto gen = lagrange_interpolator(ctx.kernel, ctx.lattice, ctx.config.tol);
  const auto periodized = normalized_periodization(ctx.kernel, ctx.lattice, gen.psi);
  double deviation = 0.0;
  for (double v : periodized) deviation = std::max(deviation, std::abs(v - 1.0));
  grid_table(*ctx.realization, gen.psi).write(path_in(ctx, "lagrange.csv"));
  const long window = std::min<long>(ctx.config.window, 8);
  report["lagrange"] = {
      {"denominator_inf", json_number(gen.denominator_inf)},
      {"denominator_sup", json_number(gen.denominator_sup)},
      {"periodization_deviation", json_number(deviation)},
      {"biorthogonality_residual", json_number(biorthogonality_check(ctx.kernel, ctx.lattice, gen.psi, window))},
      {"norm_sq", json_number(hw_inner(ctx.kernel, gen.psi, gen.psi).real())}};
  report["files"] = {"lagrange.csv"};
  return kOk;
}

int run_interp(const Context& ctx, Json& report) {
  const auto indices = data_indices(ctx);
  const Eigen::VectorXcd c = gather(lattice_data(ctx), indices);
  const auto f = min_norm_interpolant(ctx.kernel, ctx.lattice, indices, c, ctx.config.tol);
  grid_table(*ctx.realization, f.function).write(path_in(ctx, "interp.csv"));
  report["interp"] = {{"lattice_points", indices.size()},
                      {"norm", json_number(hw_norm(ctx.kernel, f.function))},
                      {"data_norm", json_number(c.norm())},
                      {"sample_residual", json_number(max_sample_residual(f.function, ctx.lattice, indices, c))}};
  report["files"] = {"interp.csv"};
  return kOk;
}

int run_project(const Context& ctx, Json& report) {
  std::mt19937_64 rng(ctx.config.seed);
  const HwElement g = random_element(ctx.kernel, rng);
  const auto p = project(ctx.kernel, ctx.lattice, g, ctx.config.window, ctx.config.tol);
  const auto cert = minimality_certificate(ctx.kernel, g, p.function);
  grid_table(*ctx.realization, p.function).write(path_in(ctx, "project.csv"));
  report["project"] = {{"norm_sq", json_number(cert.norm_sq)},
                       {"difference_sq", json_number(cert.difference_sq)},
                       {"projection_sq", json_number(cert.interpolant_sq)},
                       {"pythagoras_residual", json_number(cert.relative_residual)}};
  report["files"] = {"project.csv"};
  return kOk;
}

std::vector<double> automatic_radii(const Context& ctx) {
  const auto& r = *ctx.realization;
  std::vector<double> radii;
  if (!r.is_finite()) {
    for (int i = 1; i <= 10; ++i) radii.push_back(i);
    return radii;
  }
  for (long i : r.lattice_indices(ctx.lattice)) radii.push_back(r.norm(r.lattice_point(ctx.lattice, i)));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              radii.end());
  return radii;
}

int run_converge(const Context& ctx, Json& report) {
  const auto data = lattice_data(ctx);
  const auto radii = ctx.config.radii.empty() ? automatic_radii(ctx) : ctx.config.radii;
  const auto& r = *ctx.realization;
  Json reference;
  HwElement target = HwElement::zero(ctx.realization);
  if (r.is_finite()) {
    const auto all = r.lattice_indices(ctx.lattice);
    target = min_norm_interpolant(ctx.kernel, ctx.lattice, all, gather(data, all), ctx.config.tol).function;
    reference = {{"kind", "full_interpolant"}};
  } else {
    const double alpha = ctx.lattice.spacing;
    const double top = std::max(*std::max_element(radii.begin(), radii.end()) + 4.0 * alpha,
                                static_cast<double>(ctx.config.window) * alpha);
    const std::vector<double> ref_radii{top - alpha, top};
    const auto ref = real_line_reference(ctx.kernel, ctx.lattice, data, ref_radii, ctx.config.tol);
    target = ref.interpolant.function;
    reference = {{"kind", "largest_section"},
                 {"radius", json_number(top)},
                 {"coefficient_change", json_number(ref.coefficient_change)},
                 {"stable", ref.stable}};
  }
  const auto study = convergence_study(ctx.kernel, ctx.lattice, data, target, radii, ctx.config.tol);
  CsvTable t{{"radius", "section_size", "hw_error", "sup_error", "gram_condition"}, {}};
  for (const auto& row : study.rows) {
    t.rows.push_back({row.radius, static_cast<double>(row.section_size), row.hw_error, row.sup_error, row.gram_condition});
  }
  t.write(path_in(ctx, "converge.csv"));
  report["converge"] = to_json(study);
  report["converge"]["reference"] = reference;
  report["files"] = {"converge.csv"};
  return kOk;
}

int run_diagnose(const Context& ctx, Json& report) {
  const auto& c = ctx.config;
  const auto& r = *ctx.realization;
  const auto& w = ctx.kernel.weight;
  const auto sub = check_submultiplicative(w, r.group(), 2000, c.seed, c.tol.submultiplicative_slack);
  Json sub_json{{"max_ratio", json_number(sub.max_ratio)}, {"samples", sub.samples}, {"nonconforming", sub.nonconforming}};
  sub_json["passes"] = sub.passes ? Json(*sub.passes) : Json(nullptr);
  const auto inv = inv_weight_l2(w, r);
  const auto bounds = periodization_bounds(w, r, ctx.lattice, c.tol.riesz_threshold);
  const auto sampling = measure_sampling_constant(ctx.kernel, ctx.lattice, static_cast<std::size_t>(c.samples), c.seed, c.window);
  const auto doubled = measure_sampling_constant(ctx.kernel, ctx.lattice, 2 * static_cast<std::size_t>(c.samples), c.seed, c.window);
  report["diagnose"] = {
      {"kernel", to_json(diagnose_kernel(ctx.kernel))},
      {"submultiplicative", sub_json},
      {"inverse_weight_l2", {{"norm", json_number(inv.norm)}, {"tail_bound", json_number(inv.tail_bound)}}},
      {"periodization", {{"inf", json_number(bounds.a)}, {"sup", json_number(bounds.b)},
                         {"bounded_below", bounds.bounded_below}, {"tail_bound", json_number(bounds.tail_bound)},
                         {"grid_points", bounds.grid_points}}},
      {"sampling", {{"sup_ratio", json_number(sampling.sup_ratio)}, {"suite_size", sampling.suite_size},
                    {"doubled_sup_ratio", json_number(doubled.sup_ratio)},
                    {"relative_change", json_number(std::abs(doubled.sup_ratio - sampling.sup_ratio) / sampling.sup_ratio)},
                    {"bessel_bound", json_number(std::sqrt(periodization_to_gram_constant(r, ctx.lattice) * (bounds.b + bounds.tail_bound)))}}}};
  return kOk;
}

int run(const RunConfig& config, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  Json report = report_header(config);
  std::filesystem::create_directories(config.output);
  const std::string report_path = (std::filesystem::path(config.output) / (std::string(to_string(config.op)) + ".json")).string();
  int code = kOk;
  try {
    const auto realization = make_realization(parse_group(config.group, config.nodes_per_panel));
    Context ctx{config, realization, parse_lattice(config.lattice),
                synthesize_kernel(parse_weight(config.weight), realization), config.output};
    switch (config.op) {
      case Operation::kKernel: code = run_kernel(ctx, report); break;
      case Operation::kRiesz: code = run_riesz(ctx, report); break;
      case Operation::kLagrange: code = run_lagrange(ctx, report); break;
      case Operation::kInterp: code = run_interp(ctx, report); break;
      case Operation::kProject: code = run_project(ctx, report); break;
      case Operation::kConverge: code = run_converge(ctx, report); break;
      case Operation::kDiagnose: code = run_diagnose(ctx, report); break;
    }
    report["status"] = code == kRefusal ? "refusal" : "ok";
  } catch (const FrameRefusal& e) {
    report["status"] = "refusal";
    report["error"] = {{"module", e.module()}, {"message", e.what()},
                       {"inf", json_number(e.infimum())}, {"sup", json_number(e.supremum())}};
    code = kRefusal;
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"module", e.module()}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    code = exit_code_for(e);
  }
  if (timing) {
    report["timing_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  write_json(report_path, report);
  if (code != kOk) {
    std::cerr << "hwspace: " << report["status"].get<std::string>();
    if (report.contains("error")) std::cerr << ": " << report["error"]["message"].get<std::string>();
    std::cerr << '\n';
  }
  std::cout << report_path << '\n';
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cli_io", "cannot read config '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpolation in weighted harmonic spaces on finite cyclic groups and the real line"};
  app.footer(std::string(config_help()));
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> settings;
  bool timing = false;
  std::map<std::string, std::string> flags;
  const std::vector<std::pair<std::string, std::string>> flag_keys{
      {"--group", "group"},   {"--lattice", "lattice"}, {"--weight", "weight"}, {"--input", "input"},
      {"--data", "data"},     {"--output", "output"},   {"--window", "window"}, {"--radii", "radii"},
      {"--seed", "seed"},     {"--samples", "samples"}, {"--nodes-per-panel", "nodes_per_panel"}};

  std::vector<CLI::App*> subcommands;
  for (const char* name : {"kernel", "riesz", "lagrange", "interp", "project", "converge", "diagnose"}) {
    auto* sub = app.add_subcommand(name, std::string("run the ") + name + " pipeline");
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--set", settings, "extra key=value setting (repeatable)");
    sub->add_flag("--timing", timing, "record wall-clock time in the JSON report");
    for (const auto& [flag, key] : flag_keys) sub->add_option(flag, flags[key], "sets " + key);
    subcommands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ExtrasError& e) {
    app.exit(e);
    return kUnknownKeyExit;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformedExit;
  }

  std::string op;
  for (auto* sub : subcommands) {
    if (sub->parsed()) op = sub->get_name();
  }
  try {
    std::string text = config_path.empty() ? std::string{} : read_file(config_path);
    text += "\nop=" + op + "\n";
    for (const auto& [key, value] : flags) {
      if (!value.empty()) text += key + "=" + value + "\n";
    }
    for (const auto& s : settings) text += s + "\n";
    return run(parse_config(text), timing);
  } catch (const Error& e) {
    std::cerr << "hwspace: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}
