#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "hwspace/error.hpp"
#include "hwspace/finite_section.hpp"

using namespace hwspace;
using testing::cyclic_kernel;
using testing::random_vector;
using testing::sup_diff;
using testing::to_eigen;

namespace {

Eigen::VectorXcd restrict(const LatticeData& data, std::span<const long> section) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(section.size()));
  for (std::size_t i = 0; i < section.size(); ++i) c[static_cast<Eigen::Index>(i)] = data(section[i]);
  return c;
}

}  // namespace

TEST_CASE("lattice balls") {
  const auto k = cyclic_kernel({32}, Weight::polynomial(1));
  const auto lat = LatticeSpec::cyclic({4});
  CHECK(lattice_ball(k.space(), lat, 0.0).size() == 1);
  CHECK(lattice_ball(k.space(), lat, 4.0).size() == 3);
  CHECK(lattice_ball(k.space(), lat, 16.0).size() == 8);
  const auto line = make_realization(GroupSpec::real_line(8, 1.0 / 16, 8, 1.0 / 16));
  CHECK(lattice_ball(*line, LatticeSpec::real_line(0.5), 2.0).size() == 9);
}

TEST_CASE("finite sections on a finite group") {
  std::mt19937_64 rng(51);
  const auto k = cyclic_kernel({32}, Weight::polynomial(1));
  const auto lat = LatticeSpec::cyclic({4});
  const auto all = k.space().lattice_indices(lat);
  const auto c = to_eigen(random_vector(all.size(), rng));

  // the full section recovers the full interpolant
  const auto full = min_norm_interpolant(k, lat, all, c);
  const auto section = finite_min_norm(k, lat, all, c);
  CHECK(section.interpolant.generator == GeneratorKind::kPhi);
  CHECK(sup_diff(section.interpolant.function.group_samples(), full.function.group_samples()) < 1e-12);

  // a single point gives phi / phi(0) scaled by the datum
  const std::vector<long> origin{all[0]};
  Eigen::VectorXcd one(1);
  one[0] = cplx{2.0, -1.0};
  const auto single = finite_min_norm(k, lat, origin, one);
  auto expected = k.phi().group_samples();
  const cplx phi0 = k.phi_at({0.0});
  for (auto& v : expected) v *= one[0] / phi0;
  CHECK(sup_diff(single.interpolant.function.group_samples(), expected) < 1e-14);
  CHECK(single.condition == doctest::Approx(1.0));
}

TEST_CASE("section projections") {
  std::mt19937_64 rng(52);
  const auto k = cyclic_kernel({64}, Weight::polynomial(1));
  const auto lat = LatticeSpec::cyclic({4});
  const auto g = random_element(k, rng);
  const double gn = hw_norm(k, g);

  HwElement previous = HwElement::zero(k.realization);
  for (double radius : {0.0, 4.0, 12.0, 20.0, 32.0}) {
    const auto sec = lattice_ball(k.space(), lat, radius);
    const auto p = section_projection(k, lat, g, sec);
    CHECK(p.discrepancy < 1e-9 * gn);
    const auto& gf = p.via_samples.function;

    // Pythagoras: ||g||^2 = ||g_F||^2 + ||g - g_F||^2
    const auto cert = minimality_certificate(k, g, gf);
    CHECK(cert.relative_residual < 1e-10);

    // projecting the previous (smaller) section's solution onto the larger one leaves it fixed
    if (radius > 0.0) {
      const auto again = section_projection(k, lat, previous, sec);
      CHECK(sup_diff(again.via_samples.function.group_samples(), previous.group_samples()) < 1e-10 * gn);
    }
    const auto fixed = section_projection(k, lat, gf, sec);
    CHECK(sup_diff(fixed.via_samples.function.group_samples(), gf.group_samples()) < 1e-10 * gn);
    previous = gf;
  }
}

TEST_CASE("convergence of finite sections") {
  std::mt19937_64 rng(53);
  const auto k = cyclic_kernel({64}, Weight::polynomial(1));
  const auto lat = LatticeSpec::cyclic({4});
  const auto all = k.space().lattice_indices(lat);
  const auto c = random_vector(all.size(), rng);
  const LatticeData data = [&](long i) { return c[static_cast<std::size_t>(i)]; };
  const auto reference = min_norm_interpolant(k, lat, all, to_eigen(c)).function;

  const std::vector<double> radii{0.0, 4.0, 8.0, 16.0, 24.0, 32.0};
  const auto study = convergence_study(k, lat, data, reference, radii);
  REQUIRE(study.rows.size() == radii.size());
  CHECK(study.monotone);
  CHECK(study.embedding_constant == doctest::Approx(std::sqrt(k.phi_at({0.0}).real())));
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    const auto& row = study.rows[i];
    CHECK(row.sup_error <= study.embedding_constant * row.hw_error * (1.0 + 1e-10) + 1e-14);
    if (i > 0) CHECK(row.hw_error <= study.rows[i - 1].hw_error + 1e-12);
  }
  CHECK(study.rows.back().section_size == all.size());
  CHECK(study.rows.back().hw_error < 1e-10);
}

TEST_CASE("real-line sections against a windowed KKT solve") {
  const auto line = make_realization(GroupSpec::real_line(16, 1.0 / 32, 16, 1.0 / 16));
  const auto k = synthesize_kernel(Weight::polynomial(1), line);
  const auto lat = LatticeSpec::real_line(1.0);
  const LatticeData delta = [](long i) { return i == 0 ? cplx{1.0} : cplx{}; };
  const auto sec = lattice_ball(*line, lat, 5.0);
  REQUIRE(sec.size() == 11);
  const auto f = finite_min_norm(k, lat, sec, restrict(delta, sec));

  // independent Gram from phi at integer offsets
  Eigen::MatrixXcd gram(11, 11);
  for (Eigen::Index i = 0; i < 11; ++i) {
    for (Eigen::Index j = 0; j < 11; ++j) gram(i, j) = k.phi_at({static_cast<double>(sec[static_cast<std::size_t>(i)] - sec[static_cast<std::size_t>(j)])});
  }
  const Eigen::VectorXcd a = gram.fullPivLu().solve(restrict(delta, sec));
  CHECK((f.interpolant.coefficients - a).cwiseAbs().maxCoeff() < 1e-8);
  for (std::size_t i = 0; i < sec.size(); ++i) {
    CHECK(std::abs(f.interpolant.function({static_cast<double>(sec[i])}) - delta(sec[i])) < 1e-8);
  }

  std::vector<double> radii;
  for (int r = 1; r <= 8; ++r) radii.push_back(r);
  // the coefficient change between consecutive radii shrinks as the sections grow
  const auto near = real_line_reference(k, lat, delta, std::vector<double>{6.0, 7.0});
  const auto ref = real_line_reference(k, lat, delta, std::vector<double>{11.0, 12.0});
  CHECK(ref.coefficient_change < near.coefficient_change);
  CHECK(ref.stable == (ref.coefficient_change < default_tolerances().stability));
  const auto study = convergence_study(k, lat, delta, ref.interpolant.function, radii);
  CHECK(study.monotone);
}

TEST_CASE("singular section Gram") {
  const auto line = make_realization(GroupSpec::real_line(8, 1.0 / 16, 8, 1.0 / 16));
  const auto box = synthesize_kernel(Weight::box(0.5), line);
  const auto lat = LatticeSpec::real_line(1.0 / 16);
  const auto sec = lattice_ball(*line, lat, 3.0);
  const Eigen::VectorXcd c = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(sec.size()));
  try {
    finite_min_norm(box, lat, sec, c);
    FAIL("expected a singular Gram");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSingularGram);
  }
}
