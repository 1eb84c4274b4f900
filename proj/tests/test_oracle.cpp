#include "support.hpp"

#include "qes/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace qes;
using qes::testing::h1;

TEST_CASE("truncated matrix entries")
{
  const auto harmonic = build_truncated(h1({1}, 0, 0, 0), 4);
  CHECK(harmonic.n_max == 4);
  CHECK(harmonic.entries == Eigen::VectorXd::LinSpaced(5, 0, 4).asDiagonal().toDenseMatrix());

  const auto pair = build_truncated(h1({}, 1, 0, 0), 6);
  CHECK(pair.entries(2, 0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(pair.entries(3, 0) == 0.0);
  CHECK_THROWS_AS(build_truncated(h1({1}, 1, 0, 0), 1), std::invalid_argument);
}

TEST_CASE("truncated matrix matches fock_matrix_element and is exactly symmetric")
{
  std::vector<Rational> table{Rational(3, 2), -1, Rational(1, 4), 2, Rational(-1, 3), Rational(1, 7)};
  for (int q = 1; q <= 3; ++q) {
    const HamiltonianSpec spec(q, {1, Rational(-1, 9)}, CouplingShape{2, 2}, table, Rational(1, 3));
    const auto t = build_truncated(spec, 20);
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        CHECK(t.entries(i, j) == t.entries(j, i));
        const double f = fock_matrix_element(spec, i, j);
        CHECK(std::abs(t.entries(i, j) - f) <= 1e-12 * std::max(1.0, std::abs(f)));
        if ((i - j) % q != 0) CHECK(t.entries(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("Jacobi eigenvalues")
{
  Eigen::Matrix3d m;
  m << 2, -1, 0, -1, 2, -1, 0, -1, 2;
  const auto e = jacobi_eigenvalues(m);
  CHECK(e[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-14));
  CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(e[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-14));

  // Widely separated decoupled blocks keep their own precision.
  Eigen::Matrix4d b = Eigen::Matrix4d::Zero();
  b(0, 0) = 1e8;
  b(1, 1) = -3;
  b(1, 2) = b(2, 1) = 2;
  b(2, 2) = 1;
  b(3, 3) = 5e7;
  const auto eb = jacobi_eigenvalues(b);
  CHECK(std::abs(eb[0] - (-1 - std::sqrt(8.0))) <= 1e-14);
  CHECK(std::abs(eb[1] - (-1 + std::sqrt(8.0))) <= 1e-14);
}

TEST_CASE("level matching")
{
  auto r = match_levels({1.0, 2.0}, {0.0, 1.0 + 1e-13, 2.0, 3.0}, 1e-10);
  CHECK(r.ok());
  CHECK(r.matched.size() == 2);
  CHECK(r.max_gap() <= 1e-12);

  // Degenerate QES levels must not share a reference level.
  r = match_levels({1.0, 1.0}, {1.0, 5.0}, 1e-10);
  CHECK(r.matched.size() == 1);
  CHECK(r.unmatched.size() == 1);

  r = match_levels({1.0, 1.0}, {1.0, 1.0}, 1e-10);
  CHECK(r.ok());
  CHECK(r.matched.size() + r.unmatched.size() == 2);
}

TEST_CASE("oracle certification of the worked examples")
{
  const auto two = h1({1}, -2, 0, Rational(1, 2));
  const auto sector = SectorBasis::even(1);
  const auto res = eigen_general(build_subspace_matrix(two, sector));
  auto report = match_spectra(res, two, sector, 12, 1e-10);
  CHECK(report.ok());
  CHECK(report.max_gap() <= 1e-10);

  const auto harmonic = h1({1}, 0, 0, 0);
  report = match_spectra(eigen_general(build_subspace_matrix(harmonic, sector)), harmonic, sector, 6, 1e-10);
  CHECK(report.ok());
  CHECK(report.max_gap() == 0.0);

  const auto four = h1({1}, 6, -5, 1);
  for (const auto& s : {SectorBasis::even(1), SectorBasis::odd(1)}) {
    report = match_spectra(eigen_general(build_subspace_matrix(four, s)), four, s, 14, 1e-10);
    CHECK(report.ok());
    CHECK(report.max_gap() <= 1e-10);
  }
  CHECK_THROWS_AS(match_spectra(res, two, SectorBasis::even(3), 5, 1e-10), std::invalid_argument);
}

TEST_CASE("the summed-radicand odd pair is not a level")
{
  const auto four = h1({1}, 6, -5, 1);
  const auto t = jacobi_eigenvalues(build_truncated(four, 15).entries);
  const double wrong = 2 - std::sqrt(4.0 + 24.0);
  const auto report = match_levels({wrong, 2 + std::sqrt(28.0)}, t, 1e-6);
  CHECK(report.unmatched.size() == 2);
}

TEST_CASE("block decoupling")
{
  const auto four = h1({1}, 6, -5, 1);
  CHECK(block_decoupling_check(four, SectorBasis::even(1), 10));
  CHECK(block_decoupling_check(four, SectorBasis::odd(1), 11));
  CHECK_FALSE(block_decoupling_check(h1({1}, 1, 0, 0), SectorBasis::even(1), 10));
  CHECK_FALSE(block_decoupling_check(four, SectorBasis::even(2), 10));
}

TEST_CASE("QES levels are independent of the truncation")
{
  std::mt19937 rng(41);
  for (int q = 1; q <= 3; ++q) {
    for (int k0 = 1; k0 <= 2; ++k0) {
      const SectorBasis sector{q, q - 1, 3 + k0};
      const CouplingShape shape{k0, k0};
      const auto basis = solve_cutoff_system(build_cutoff_system(shape, sector));
      REQUIRE_FALSE(basis.empty());
      const HamiltonianSpec spec(q, {1}, shape, testing::sample_nullspace(rng, basis, shape.unknowns()));
      const auto res = eigen_general(build_subspace_matrix(spec, sector));
      const int lo = static_cast<int>(sector.particles(sector.top));
      std::vector<double> gaps;
      for (int n_max = lo; n_max <= lo + 3 * q + 4; ++n_max) {
        if (n_max < q * k0) continue;
        const auto report = match_spectra(res, spec, sector, n_max, 1e-10);
        CHECK(report.ok());
        if (n_max > lo) CHECK(block_decoupling_check(spec, sector, n_max));
        std::vector<double> g;
        for (const auto& m : report.matched) g.push_back(m.oracle);
        if (!gaps.empty()) {
          for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(g[i] - gaps[i]) <= 1e-12 * (1 + std::abs(g[i])));
        }
        gaps = g;
      }
    }
  }
}

TEST_CASE("default truncation")
{
  CHECK(default_n_max(SectorBasis::even(1)) == 8);
  CHECK(default_n_max(SectorBasis::odd(2)) == 11);
  CHECK(default_n_max(SectorBasis{3, 2, 0}) == 11);
}
