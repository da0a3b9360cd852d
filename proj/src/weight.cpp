#include "hwspace/weight.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "hwspace/error.hpp"

namespace hwspace {
namespace {

constexpr const char* kModule = "weight";
constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, kModule, msg); }

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string fmt(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

}  // namespace

Weight::Weight(Family family) : family_(std::move(family)) {
  std::visit(Overloaded{
                 [](const PolynomialWeight& p) {
                   if (!(p.s >= 0.0)) fail(ErrorCode::kInvalidSpec, "polynomial weight needs s >= 0");
                 },
                 [](const SubexponentialWeight& e) {
                   if (!(e.a > 0.0)) fail(ErrorCode::kInvalidSpec, "subexponential weight needs a > 0");
                   if (!(e.delta > 0.0 && e.delta < 1.0)) {
                     fail(ErrorCode::kInvalidSpec, "subexponential weight needs 0 < delta < 1");
                   }
                   if (!std::isfinite(e.s)) fail(ErrorCode::kInvalidSpec, "subexponential s must be finite");
                 },
                 [](const BoxWeight& b) {
                   if (!(b.omega > 0.0)) fail(ErrorCode::kInvalidSpec, "box weight needs omega > 0");
                 },
                 [](const TableWeight& t) {
                   if (t.radii.empty() || t.radii.size() != t.values.size()) {
                     fail(ErrorCode::kInvalidSpec, "table weight needs matching, nonempty columns");
                   }
                   if (t.radii.front() != 0.0) fail(ErrorCode::kInvalidSpec, "table must start at radius 0");
                   for (std::size_t i = 0; i < t.radii.size(); ++i) {
                     if (!(t.values[i] > 0.0) || !std::isfinite(t.values[i])) {
                       fail(ErrorCode::kInvalidSpec, "table weights must be positive and finite");
                     }
                     if (i > 0 && !(t.radii[i] > t.radii[i - 1])) {
                       fail(ErrorCode::kInvalidSpec, "table radii must be strictly increasing");
                     }
                   }
                 },
             },
             family_);
}

Weight Weight::polynomial(double s) { return Weight(PolynomialWeight{s}); }
Weight Weight::subexponential(double a, double delta, double s) {
  return Weight(SubexponentialWeight{a, delta, s});
}
Weight Weight::box(double omega) { return Weight(BoxWeight{omega}); }
Weight Weight::table(std::vector<double> radii, std::vector<double> values, std::string source) {
  return Weight(TableWeight{std::move(radii), std::move(values), std::move(source)});
}

Weight Weight::table_from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open weight table " + path);
  std::vector<double> radii;
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double r = 0.0;
    double w = 0.0;
    if (!(row >> r >> w)) {
      if (radii.empty()) continue;  // header
      fail(ErrorCode::kMalformedValue, "bad weight table row: " + line);
    }
    radii.push_back(r);
    values.push_back(w);
  }
  return table(std::move(radii), std::move(values), path);
}

double Weight::eval_radius(double r) const {
  return std::visit(Overloaded{
                        [r](const PolynomialWeight& p) { return std::pow(1.0 + r, p.s); },
                        [r](const SubexponentialWeight& e) {
                          return std::exp(e.a * std::pow(r, e.delta)) * std::pow(1.0 + r, e.s);
                        },
                        [r](const BoxWeight& b) { return r <= b.omega ? 1.0 : kInf; },
                        [r](const TableWeight& t) {
                          if (r > t.radii.back()) return kInf;
                          const auto it = std::upper_bound(t.radii.begin(), t.radii.end(), r);
                          const std::size_t hi = static_cast<std::size_t>(it - t.radii.begin());
                          if (hi >= t.radii.size()) return t.values.back();
                          const std::size_t lo = hi - 1;
                          const double s = (r - t.radii[lo]) / (t.radii[hi] - t.radii[lo]);
                          return t.values[lo] + s * (t.values[hi] - t.values[lo]);
                        },
                    },
                    family_);
}

double Weight::inverse_power(double r, double power) const {
  // closed forms avoid overflow of w for large radii
  return std::visit(Overloaded{
                        [&](const PolynomialWeight& p) { return std::pow(1.0 + r, -power * p.s); },
                        [&](const SubexponentialWeight& e) {
                          return std::exp(-power * e.a * std::pow(r, e.delta)) *
                                 std::pow(1.0 + r, -power * e.s);
                        },
                        [&](const auto&) {
                          const double w = eval_radius(r);
                          return std::isinf(w) ? 0.0 : std::pow(w, -power);
                        },
                    },
                    family_);
}

bool Weight::conforming() const {
  return std::holds_alternative<PolynomialWeight>(family_) ||
         std::holds_alternative<SubexponentialWeight>(family_);
}

std::string Weight::spec_string() const {
  return std::visit(Overloaded{
                        [](const PolynomialWeight& p) { return "poly:" + fmt(p.s); },
                        [](const SubexponentialWeight& e) {
                          return "subexp:" + fmt(e.a) + "," + fmt(e.delta) + "," + fmt(e.s);
                        },
                        [](const BoxWeight& b) { return "box:" + fmt(b.omega); },
                        [](const TableWeight& t) { return "table:" + t.source; },
                    },
                    family_);
}

double weight_tail_integral(const Weight& w, double power, double gamma) {
  return std::visit(
      Overloaded{
          [&](const PolynomialWeight& p) {
            const double e = power * p.s;
            if (e <= 1.0) return kInf;
            return std::pow(1.0 + gamma, 1.0 - e) / (e - 1.0);
          },
          [&](const SubexponentialWeight& sw) {
            if (sw.s >= 0.0) {
              // (1 + r)^{-ps} <= (1 + gamma)^{-ps}; the exponential part in closed form
              const double c = power * sw.a;
              const double k = 1.0 / sw.delta;
              const double x = c * std::pow(gamma, sw.delta);
              return std::pow(1.0 + gamma, -power * sw.s) * k * std::pow(c, -k) *
                     boost::math::tgamma(k, x);
            }
            boost::math::quadrature::exp_sinh<double> integrator;
            return integrator.integrate([&](double t) { return w.inverse_power(gamma + t, power); });
          },
          [&](const BoxWeight& b) { return gamma >= b.omega ? 0.0 : b.omega - gamma; },
          [&](const TableWeight& t) {
            double acc = 0.0;
            for (std::size_t i = 1; i < t.radii.size(); ++i) {
              const double lo = std::max(t.radii[i - 1], gamma);
              const double hi = t.radii[i];
              if (hi <= lo) continue;
              // Simpson on each linear piece of w
              const double mid = 0.5 * (lo + hi);
              acc += (hi - lo) / 6.0 *
                     (w.inverse_power(lo, power) + 4.0 * w.inverse_power(mid, power) +
                      w.inverse_power(hi, power));
            }
            return acc;
          },
      },
      w.family());
}

double periodization_tail_bound(const Weight& w, double power, double gamma_max, double alpha) {
  const double integral = weight_tail_integral(w, power, gamma_max);
  if (!std::isfinite(integral)) return kInf;
  // the integral test needs w^{-power} nonincreasing beyond gamma_max
  double prev = w.inverse_power(gamma_max, power);
  for (int i = 1; i <= 256; ++i) {
    const double v = w.inverse_power(gamma_max * (1.0 + 0.05 * i), power);
    if (v > prev * (1.0 + 1e-12)) return kInf;
    prev = v;
  }
  return 2.0 * (w.inverse_power(gamma_max, power) + alpha * integral);
}

SubmultiplicativeReport check_submultiplicative(const Weight& w, const GroupSpec& g,
                                                std::size_t sample_count, std::uint64_t seed,
                                                double slack) {
  if (sample_count < 1) fail(ErrorCode::kInvalidSpec, "sample count must be >= 1");
  g.validate();
  SubmultiplicativeReport report;
  report.samples = sample_count;
  report.nonconforming = !w.conforming();
  std::mt19937_64 rng(seed);

  auto ratio = [&](double r1, double r2, double r12) {
    const double w1 = w.eval_radius(r1);
    const double w2 = w.eval_radius(r2);
    const double w12 = w.eval_radius(r12);
    if (std::isinf(w1) || std::isinf(w2) || std::isinf(w12)) {
      report.nonconforming = true;
      return 0.0;
    }
    return w12 / (w1 * w2);
  };

  if (g.is_finite()) {
    std::vector<long> k1(g.orders.size());
    std::vector<long> k2(g.orders.size());
    std::vector<long> k12(g.orders.size());
    for (std::size_t s = 0; s < sample_count; ++s) {
      for (std::size_t i = 0; i < g.orders.size(); ++i) {
        std::uniform_int_distribution<long> pick(0, g.orders[i] - 1);
        k1[i] = pick(rng);
        k2[i] = pick(rng);
        k12[i] = (k1[i] + k2[i]) % g.orders[i];
      }
      report.max_ratio = std::max(report.max_ratio, ratio(cyclic_dual_radius(g, k1),
                                                          cyclic_dual_radius(g, k2),
                                                          cyclic_dual_radius(g, k12)));
    }
  } else {
    std::uniform_real_distribution<double> pick(-g.gamma_max, g.gamma_max);
    for (std::size_t s = 0; s < sample_count; ++s) {
      const double a = pick(rng);
      const double b = pick(rng);
      report.max_ratio = std::max(report.max_ratio, ratio(std::abs(a), std::abs(b), std::abs(a + b)));
    }
  }
  if (!report.nonconforming) report.passes = report.max_ratio <= 1.0 + slack;
  return report;
}

BdPartialSum bd_partial_sum(const Weight& w, const GroupSpec& g, const DualPoint& gamma, long terms) {
  if (terms < 1) fail(ErrorCode::kInvalidSpec, "partial sum needs N >= 1");
  g.validate();
  if (g.is_finite() && gamma.index.size() != g.orders.size()) {
    fail(ErrorCode::kSizeMismatch, "dual index dimension does not match the group");
  }
  BdPartialSum out;
  std::vector<long> nk(gamma.index.size());
  for (long n = 1; n <= terms; ++n) {
    double r = 0.0;
    if (g.is_finite()) {
      for (std::size_t i = 0; i < nk.size(); ++i) nk[i] = (n % g.orders[i]) * gamma.index[i] % g.orders[i];
      r = cyclic_dual_radius(g, nk);
    } else {
      r = std::abs(static_cast<double>(n) * gamma.gamma);
    }
    // log w evaluated analytically where possible to avoid overflow
    double log_w = 0.0;
    if (const auto* p = std::get_if<PolynomialWeight>(&w.family())) {
      log_w = p->s * std::log1p(r);
    } else if (const auto* e = std::get_if<SubexponentialWeight>(&w.family())) {
      log_w = e->a * std::pow(r, e->delta) + e->s * std::log1p(r);
    } else {
      log_w = std::log(w.eval_radius(r));
    }
    const double inc = log_w / (static_cast<double>(n) * static_cast<double>(n));
    if (std::isinf(inc)) {
      out.infinite = true;
      out.value = kInf;
      out.last_increment = kInf;
      return out;
    }
    out.value += inc;
    out.last_increment = inc;
  }
  return out;
}

InverseWeightNorm inv_weight_l2(const Weight& w, const Realization& r) {
  InverseWeightNorm out;
  double sq = 0.0;
  for (std::size_t j = 0; j < r.dual_size(); ++j) sq += r.dual_weight(j) * w.inverse_power(r.radius(j), 2.0);
  if (!r.is_finite()) {
    out.tail_bound = 2.0 * weight_tail_integral(w, 2.0, r.group().gamma_max);
    if (!std::isfinite(out.tail_bound)) {
      fail(ErrorCode::kNotInL2, "w^{-1} is not in L^2 for weight " + w.spec_string());
    }
    sq += out.tail_bound;
  }
  out.norm = std::sqrt(sq);
  return out;
}

double periodization_scale(const Realization& r) {
  return r.is_finite() ? 1.0 / static_cast<double>(r.group().order()) : 1.0;
}

PeriodizationBounds periodization_bounds(const Weight& w, const Realization& r,
                                         const LatticeSpec& lat, double threshold) {
  const auto cosets = r.annihilator_cosets(lat);
  std::vector<double> sums(cosets.coset_count(), 0.0);
  for (std::size_t j = 0; j < r.dual_size(); ++j) {
    sums[cosets.coset_of_node[j]] += w.inverse_power(r.radius(j), 2.0);
  }
  const double scale = periodization_scale(r);
  PeriodizationBounds out;
  out.grid_points = sums.size();
  const auto [lo, hi] = std::minmax_element(sums.begin(), sums.end());
  out.a = *lo * scale;
  out.b = *hi * scale;
  if (!r.is_finite()) out.tail_bound = periodization_tail_bound(w, 2.0, r.group().gamma_max, lat.spacing);
  out.bounded_below = out.a > threshold * out.b;
  return out;
}

}  // namespace hwspace
