// Acceptance suite: one PASS/FAIL line per criterion; exit status is the number of failures.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "hwspace/finite_section.hpp"
#include "hwspace/interpolation.hpp"
#include "hwspace/kernel.hpp"
#include "hwspace/lattice_analysis.hpp"
#include "oracles.hpp"

using namespace hwspace;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = limit_seconds <= 0.0 || secs < limit_seconds;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %s %s: %s; runtime %.2fs", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
  if (limit_seconds > 0.0) std::printf(" (limit %.0fs)", limit_seconds);
  std::printf("\n");
  std::fflush(stdout);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

oracle::RadialWeight poly(double s) {
  return [s](double r) { return std::pow(1.0 + r, s); };
}

oracle::RadialWeight subexp(double a, double delta, double s) {
  return [=](double r) { return std::exp(a * std::pow(r, delta)) * std::pow(1.0 + r, s); };
}

std::vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<cplx> v(n);
  for (auto& x : v) {
    const double re = gauss(rng);
    x = {re, gauss(rng)};
  }
  return v;
}

Eigen::VectorXcd to_eigen(const std::vector<cplx>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double sup_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

Kernel finite_kernel(std::vector<int> orders, const Weight& w) {
  return synthesize_kernel(w, make_realization(GroupSpec::cyclic(std::move(orders))));
}

std::vector<oracle::Index> library_lattice(const Realization& r, const LatticeSpec& lat) {
  std::vector<oracle::Index> pts;
  for (long i : r.lattice_indices(lat)) {
    const auto p = r.lattice_point(lat, i);
    pts.emplace_back(p.begin(), p.end());
  }
  return pts;
}

Outcome weil_identity() {
  std::mt19937_64 rng(11);
  double worst_lib = 0.0;
  double worst_oracle = 0.0;
  int cases = 0;
  for (int n : {8, 12, 64, 256}) {
    const auto r = make_realization(GroupSpec::cyclic({n}));
    for (int d : oracle::divisors(n)) {
      const auto lat = LatticeSpec::cyclic({d});
      for (int t = 0; t < 50; ++t) {
        const auto f = random_vector(static_cast<std::size_t>(n), rng);
        worst_lib = std::max(worst_lib, weil_check(*r, lat, f));

        // group side: sum over G against sum over residues of sums over the lattice coset
        cplx lhs{}, rhs{};
        for (const auto& v : f) lhs += v;
        for (int x0 = 0; x0 < d; ++x0) {
          for (int m = 0; m < n / d; ++m) rhs += f[static_cast<std::size_t>(x0 + m * d)];
        }
        // dual side with the 1/N measure, and the Poisson form sum_Lambda f = (1/d) sum_{Lambda^perp} f^
        const auto fh = oracle::dft(f, {n}, -1);
        cplx dual_lhs{}, dual_rhs{}, on_lattice{}, on_annihilator{};
        for (const auto& v : fh) dual_lhs += v / static_cast<double>(n);
        const int step = n / d;
        for (int k0 = 0; k0 < step; ++k0) {
          for (int j = 0; j < d; ++j) dual_rhs += fh[static_cast<std::size_t>(k0 + j * step)] / static_cast<double>(n);
        }
        for (int m = 0; m < n / d; ++m) on_lattice += f[static_cast<std::size_t>(m * d)];
        for (int j = 0; j < d; ++j) on_annihilator += fh[static_cast<std::size_t>(j * step)] / static_cast<double>(d);
        worst_oracle = std::max({worst_oracle, std::abs(lhs - rhs), std::abs(dual_lhs - dual_rhs),
                                 std::abs(on_lattice - on_annihilator)});
        ++cases;
      }
    }
  }
  const double worst = std::max(worst_lib, worst_oracle);
  return {worst < 1e-12, std::to_string(cases) + " functions, library residual " + sci(worst_lib) +
                             ", direct-sum residual " + sci(worst_oracle) + " (limit 1e-12)"};
}

Outcome reproducing_property() {
  struct Case {
    const char* name;
    Weight w;
    oracle::RadialWeight ow;
  };
  const std::vector<Case> cases{{"poly:1", Weight::polynomial(1), poly(1)},
                                {"poly:2", Weight::polynomial(2), poly(2)},
                                {"subexp:0.5,0.5,0", Weight::subexponential(0.5, 0.5, 0), subexp(0.5, 0.5, 0)}};
  std::mt19937_64 rng(12);
  double worst = 0.0, worst_norm = 0.0, worst_phi = 0.0;
  for (const auto& c : cases) {
    const auto k = finite_kernel({64}, c.w);
    const auto& r = k.space();
    const auto phi_oracle = oracle::kernel_values({64}, c.ow);
    worst_phi = std::max(worst_phi, sup_diff(k.phi().group_samples(), phi_oracle));
    const double norm_sq = hw_inner(k, k.phi(), k.phi()).real();
    worst_norm = std::max(worst_norm, std::abs(norm_sq - phi_oracle[0].real()) / phi_oracle[0].real());
    for (int t = 0; t < 100; ++t) {
      const HwElement f = random_element(k, rng);
      std::vector<cplx> hat(f.hat().data(), f.hat().data() + f.hat().size());
      const auto values = oracle::dft(hat, {64}, +1);
      for (std::size_t x = 0; x < r.group_size(); ++x) {
        const Point p = r.group_point(x);
        worst = std::max(worst, std::abs(values[x] - hw_inner(k, f, translate(k.phi(), p))));
      }
    }
  }
  const bool pass = worst < 1e-10 && worst_norm < 1e-10 && worst_phi < 1e-12;
  return {pass, "max |f(x) - <f, T_x phi>_w| " + sci(worst) + " (limit 1e-10), ||phi||_w^2 vs phi(0) relative " +
                    sci(worst_norm) + " (limit 1e-10), phi vs direct sum " + sci(worst_phi)};
}

Outcome lagrange_biorthogonality() {
  std::vector<std::vector<int>> groups;
  for (int n = 2; n <= 256; ++n) groups.push_back({n});
  groups.push_back({4, 6});
  groups.push_back({8, 8});
  double worst_bi = 0.0, worst_bf = 0.0;
  int cases = 0;
  for (const auto& orders : groups) {
    const auto k = finite_kernel(orders, Weight::polynomial(1));
    const auto phi_oracle = oracle::kernel_values(orders, poly(1));
    std::vector<std::vector<int>> lattices;
    if (orders.size() == 1) {
      for (int d : oracle::divisors(orders[0])) lattices.push_back({d});
    } else {
      for (int d0 : oracle::divisors(orders[0])) {
        for (int d1 : oracle::divisors(orders[1])) lattices.push_back({d0, d1});
      }
    }
    for (const auto& d : lattices) {
      const auto lat = LatticeSpec::cyclic(d);
      const auto gen = lagrange_interpolator(k, lat);
      worst_bi = std::max(worst_bi, biorthogonality_check(k, lat, gen.psi));
      const auto psi_bf = oracle::brute_force_biorthogonal(orders, phi_oracle, oracle::lattice_points(orders, d));
      worst_bf = std::max(worst_bf, sup_diff(gen.psi.group_samples(), psi_bf));
      ++cases;
    }
  }
  return {worst_bi < 1e-10 && worst_bf < 1e-10,
          std::to_string(cases) + " (group, lattice) pairs with N <= 256, max |<T_l phi, T_l' psi>_w - delta| " +
              sci(worst_bi) + ", sup |psi - brute-force Gram solve| " + sci(worst_bf) + " (limit 1e-10)"};
}

Outcome minimal_norm_oracle() {
  std::mt19937_64 rng(14);
  double worst = 0.0;
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{64, 4}, {256, 8}}) {
    const auto k = finite_kernel({n}, Weight::polynomial(1));
    const auto lat = LatticeSpec::cyclic({d});
    const auto indices = k.space().lattice_indices(lat);
    const auto pts = oracle::lattice_points({n}, {d});
    if (library_lattice(k.space(), lat) != pts) return {false, "lattice enumeration differs from the oracle"};
    const auto gen = lagrange_interpolator(k, lat);
    for (int t = 0; t < 100; ++t) {
      const Eigen::VectorXcd c = to_eigen(random_vector(indices.size(), rng));
      const auto f = min_norm_interpolant(gen, indices, c);
      const Eigen::VectorXcd ref = oracle::least_norm_hat({n}, poly(1), pts, c);
      const double rel = std::sqrt(oracle::hw_norm_sq(f.function.hat() - ref, {n}, poly(1)) /
                                   oracle::hw_norm_sq(ref, {n}, poly(1)));
      worst = std::max(worst, rel);
    }
  }
  return {worst < 1e-8, "200 data vectors on Z_64/d=4 and Z_256/d=8, max relative H_w difference to the KKT "
                        "least-norm solution " + sci(worst) + " (limit 1e-8)"};
}

Outcome pythagoras() {
  std::mt19937_64 rng(15);
  double worst_lib = 0.0, worst_oracle = 0.0, worst_recovery = 0.0;
  int competitors = 0;
  for (const auto& [n, d] : std::vector<std::pair<int, int>>{{64, 4}, {256, 8}}) {
    const auto k = finite_kernel({n}, Weight::polynomial(1));
    const auto lat = LatticeSpec::cyclic({d});
    const auto indices = k.space().lattice_indices(lat);
    for (int t = 0; t < 50; ++t) {
      // g = f_c + h with h = r - P r vanishing on the lattice
      const Eigen::VectorXcd c = to_eigen(random_vector(indices.size(), rng));
      const auto fc = min_norm_interpolant(k, lat, indices, c);
      const HwElement r = random_element(k, rng);
      const HwElement h = r - project(k, lat, r).function;
      const HwElement g = fc.function + h;
      const auto samples = sample(g, lat, indices);
      const auto interpolant = min_norm_interpolant(k, lat, indices, to_eigen(samples));
      worst_recovery = std::max(worst_recovery, std::sqrt(oracle::hw_norm_sq(interpolant.function.hat() - fc.function.hat(), {n}, poly(1))));
      const auto cert = minimality_certificate(k, g, interpolant.function);
      worst_lib = std::max(worst_lib, cert.relative_residual);
      const double gg = oracle::hw_norm_sq(g.hat(), {n}, poly(1));
      const double dd = oracle::hw_norm_sq(g.hat() - interpolant.function.hat(), {n}, poly(1));
      const double ff = oracle::hw_norm_sq(interpolant.function.hat(), {n}, poly(1));
      worst_oracle = std::max(worst_oracle, std::abs(gg - dd - ff) / gg);
      ++competitors;
    }
  }
  return {worst_lib < 1e-8 && worst_oracle < 1e-8 && worst_recovery < 1e-8,
          std::to_string(competitors) + " competitors, relative residual " + sci(worst_lib) + " (library) / " +
              sci(worst_oracle) + " (direct norms) (limit 1e-8), ||f_c(g) - f_c|| " + sci(worst_recovery)};
}

Outcome riesz_criteria() {
  struct Case {
    std::vector<int> n, d;
    Weight w;
    oracle::RadialWeight ow;
  };
  const std::vector<Case> cases{
      {{64}, {2}, Weight::polynomial(1), poly(1)},   {{64}, {4}, Weight::polynomial(1), poly(1)},
      {{64}, {8}, Weight::polynomial(2), poly(2)},   {{256}, {8}, Weight::polynomial(1), poly(1)},
      {{8, 8}, {2, 4}, Weight::polynomial(1), poly(1)},
      {{64}, {4}, Weight::subexponential(0.5, 0.5, 0), subexp(0.5, 0.5, 0)}};
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto k = finite_kernel(c.n, c.w);
    const auto lat = LatticeSpec::cyclic(c.d);
    const auto rep = riesz_bounds(k, lat);
    const auto pts = oracle::lattice_points(c.n, c.d);
    const double kappa = static_cast<double>(pts.size());  // |Lambda|
    if (rep.oracle_constant != kappa) return {false, "Gram constant " + sci(rep.oracle_constant) + " != |Lambda|"};

    // dense Gram matrices from direct sums: phi for H_w, F^{-1}(w^{-4}) for L^2
    const auto phi = oracle::kernel_values(c.n, c.ow);
    const auto wt = oracle::weights(c.n, c.ow);
    std::vector<cplx> hat_sq(wt.size());
    for (std::size_t j = 0; j < wt.size(); ++j) hat_sq[j] = std::pow(wt[j], -4.0);
    const auto corr_l2 = oracle::dft(hat_sq, c.n, +1);
    const auto m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXcd ghw(m, m), gl2(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        oracle::Index diff(c.n.size());
        for (std::size_t a = 0; a < diff.size(); ++a) diff[a] = pts[static_cast<std::size_t>(i)][a] - pts[static_cast<std::size_t>(j)][a];
        ghw(i, j) = phi[oracle::flatten(diff, c.n)];
        gl2(i, j) = corr_l2[oracle::flatten(diff, c.n)];
      }
    }
    const Eigen::VectorXd ehw = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(ghw).eigenvalues();
    const Eigen::VectorXd el2 = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(gl2).eigenvalues();
    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    worst = std::max({worst, rel(kappa * rep.a_hw, ehw.minCoeff()), rel(kappa * rep.b_hw, ehw.maxCoeff()),
                      rel(kappa * rep.a_l2, el2.minCoeff()), rel(kappa * rep.b_l2, el2.maxCoeff())});
  }

  const auto line = make_realization(GroupSpec::real_line(8, 1.0 / 16, 8, 1.0 / 16));
  const auto box = synthesize_kernel(Weight::box(0.5), line);
  const auto half = riesz_bounds(box, LatticeSpec::real_line(0.5), 16);
  const auto unit = riesz_bounds(box, LatticeSpec::real_line(1.0), 16);
  const bool box_ok = half.verdict == RieszVerdict::kNotBoundedBelow && half.a_hw < 1e-8 * half.b_hw &&
                      unit.verdict == RieszVerdict::kRiesz;
  return {worst < 1e-8 && box_ok,
          "periodization extrema x |Lambda| vs dense Gram spectra, max relative difference " + sci(worst) +
              " (limit 1e-8); box/alpha=0.5 verdict " + std::string(to_string(half.verdict)) + " with inf " +
              sci(half.a_hw) + ", sup " + sci(half.b_hw) + "; box/alpha=1 verdict " + std::string(to_string(unit.verdict))};
}

Outcome sinc_closed_form() {
  const auto line = make_realization(GroupSpec::real_line(8, 1.0 / 16, 16, 1.0 / 16));
  const auto k = synthesize_kernel(Weight::box(0.5), line);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> where(-10.0, 10.0);
  double worst = 0.0;
  for (int t = 0; t < 50;) {
    const double x = where(rng);
    if (std::abs(x - std::round(x)) < 1e-3) continue;
    worst = std::max(worst, std::abs(k.phi_at({x}) - oracle::sinc(x)));
    ++t;
  }
  const auto gen = lagrange_interpolator(k, LatticeSpec::real_line(1.0));
  const double psi_phi = sup_diff(gen.psi.group_samples(), k.phi().group_samples());
  return {worst < 1e-8 && psi_phi < 1e-9, "max |phi(x) - sin(pi x)/(pi x)| at 50 off-lattice points " + sci(worst) +
                                              " (limit 1e-8), sup |psi - phi| for Lambda = Z " + sci(psi_phi) +
                                              " (limit 1e-9)"};
}

Outcome finite_section_convergence() {
  std::string detail;
  bool pass = true;
  std::mt19937_64 rng(18);

  // finite groups: reference is the full interpolant, radii run through every lattice norm
  struct Case {
    std::vector<int> n, d;
  };
  double worst_final = 0.0;
  int monotone_cases = 0, total_cases = 0;
  for (const auto& c : std::vector<Case>{{{64}, {4}}, {{256}, {8}}, {{8, 8}, {2, 2}}}) {
    const auto k = finite_kernel(c.n, Weight::polynomial(1));
    const auto& r = k.space();
    const auto lat = LatticeSpec::cyclic(c.d);
    const auto all = r.lattice_indices(lat);
    auto values = std::make_shared<std::vector<cplx>>(random_vector(all.size(), rng));
    const LatticeData data = [values](long i) { return (*values)[static_cast<std::size_t>(i)]; };
    const auto full = min_norm_interpolant(k, lat, all, to_eigen(*values));
    std::vector<double> radii;
    for (long i : all) radii.push_back(r.norm(r.lattice_point(lat, i)));
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    const auto study = convergence_study(k, lat, data, full.function, radii);
    worst_final = std::max({worst_final, study.rows.back().hw_error, study.rows.back().sup_error});
    monotone_cases += study.monotone ? 1 : 0;
    ++total_cases;
  }

  // real line, box kernel, c = delta_0: errors against the closed-form sinc
  const auto line = make_realization(GroupSpec::real_line(8, 1.0 / 16, 16, 1.0 / 16));
  const auto box = synthesize_kernel(Weight::box(0.5), line);
  const auto unit = LatticeSpec::real_line(1.0);
  Eigen::VectorXcd band(static_cast<Eigen::Index>(line->dual_size()));
  for (std::size_t j = 0; j < line->dual_size(); ++j) {
    band[static_cast<Eigen::Index>(j)] = std::abs(line->frequency(j)[0]) <= 0.5 ? 1.0 : 0.0;
  }
  const HwElement sinc_ref(line, band);
  const LatticeData delta = [](long i) { return i == 0 ? cplx{1.0} : cplx{}; };
  std::vector<double> radii;
  for (int i = 1; i <= 10; ++i) radii.push_back(i);
  const auto box_study = convergence_study(box, unit, delta, sinc_ref, radii);
  double box_sup = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  bool box_sup_monotone = true;
  for (double radius : radii) {
    const auto section = lattice_ball(*line, unit, radius);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(section.size()));
    for (std::size_t i = 0; i < section.size(); ++i) c[static_cast<Eigen::Index>(i)] = delta(section[i]);
    const auto fit = finite_min_norm(box, unit, section, c);
    const auto values = fit.interpolant.function.group_samples();
    double e = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      e = std::max(e, std::abs(values[i] - oracle::sinc(line->group_point(i)[0])));
    }
    box_sup_monotone = box_sup_monotone && e <= previous + 1e-12;
    previous = e;
    box_sup = std::max(box_sup, e);
  }
  monotone_cases += box_study.monotone && box_sup_monotone ? 1 : 0;
  ++total_cases;

  // real line, polynomial weight, decaying data: reference is the largest certified section
  const auto poly_line = make_realization(GroupSpec::real_line(16, 1.0 / 16, 8, 1.0 / 8));
  const auto pk = synthesize_kernel(Weight::polynomial(1), poly_line);
  const auto half = LatticeSpec::real_line(0.5);
  const LatticeData decay = [](long i) { return cplx{1.0 / (1.0 + static_cast<double>(i * i)), 0.0}; };
  const auto ref = real_line_reference(pk, half, decay, std::vector<double>{7.0, 7.5});
  std::vector<double> poly_radii;
  for (int i = 1; i <= 12; ++i) poly_radii.push_back(0.5 * i);
  const auto poly_study = convergence_study(pk, half, decay, ref.interpolant.function, poly_radii);
  monotone_cases += poly_study.monotone ? 1 : 0;
  ++total_cases;

  pass = monotone_cases == total_cases && worst_final < 1e-10;
  detail = std::to_string(monotone_cases) + "/" + std::to_string(total_cases) +
           " configurations nonincreasing (slack 1e-12); finite full-radius error " + sci(worst_final) +
           " (limit 1e-10); box/delta_0 max H_w error " + sci(box_study.rows.front().hw_error) + ", max sup error vs sinc " +
           sci(box_sup) + "; poly real-line errors " + sci(poly_study.rows.front().hw_error) + " -> " +
           sci(poly_study.rows.back().hw_error);
  return {pass, detail};
}

Outcome sampling_boundedness() {
  struct Case {
    const char* name;
    Kernel k;
    LatticeSpec lat;
    long window;
  };
  const std::vector<Case> cases{
      {"Z_64/d=4", finite_kernel({64}, Weight::polynomial(1)), LatticeSpec::cyclic({4}), 0},
      {"R/alpha=0.5", synthesize_kernel(Weight::polynomial(1), make_realization(GroupSpec::real_line(16, 1.0 / 16, 8, 1.0 / 8))),
       LatticeSpec::real_line(0.5), 16}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto small = measure_sampling_constant(c.k, c.lat, 500, 19, c.window);
    const auto big = measure_sampling_constant(c.k, c.lat, 1000, 19, c.window);
    const double change = std::abs(big.sup_ratio - small.sup_ratio) / small.sup_ratio;
    const auto hw = hw_periodization(c.k, c.lat);
    const double bound = std::sqrt(periodization_to_gram_constant(c.k.space(), c.lat) * (hw.sup() + hw.tail_bound));
    const bool ok = std::isfinite(small.sup_ratio) && change < 0.01 && big.sup_ratio <= bound * (1.0 + 1e-12);
    pass = pass && ok;
    detail += std::string(detail.empty() ? "" : "; ") + c.name + " sup ratio " + sci(small.sup_ratio) + " -> " +
              sci(big.sup_ratio) + " (change " + sci(change) + ", limit 1e-2, Bessel bound " + sci(bound) + ")";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  report("C1", "weil-identity", 5, weil_identity);
  report("C2", "reproducing-property", 10, reproducing_property);
  report("C3", "lagrange-biorthogonality", 30, lagrange_biorthogonality);
  report("C4", "minimal-norm-oracle", 60, minimal_norm_oracle);
  report("C5", "pythagoras", 10, pythagoras);
  report("C6", "riesz-criteria", 30, riesz_criteria);
  report("C7", "sinc-closed-form", 0, sinc_closed_form);
  report("C8", "finite-section-convergence", 60, finite_section_convergence);
  report("C9", "sampling-boundedness", 0, sampling_boundedness);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
