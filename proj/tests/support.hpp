#pragma once

// Test-only reference formulas and generators. The reference expressions
// here are typed in directly for the q = 2, s0 <= 2 family and never call the
// library's coefficient functions.

#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace qes::testing {

/// (eps_1..), A0 + A1 m + A2 m^2 on the q = 2 single-hop family.
inline HamiltonianSpec h1(std::vector<Rational> eps, Rational a0, Rational a1, Rational a2)
{
  return HamiltonianSpec::single_hop(2, std::move(eps), {std::move(a0), std::move(a1), std::move(a2)});
}

// Even sector: alpha_l = A0 + 2l A1 + (2l)^2 A2,
//              beta_l  = 2l (2l-1) [A0 + (2l-2) A1 + (2l-2)^2 A2].
inline Rational even_alpha_ref(const Rational& a0, const Rational& a1, const Rational& a2, int l)
{
  return a0 + Rational(2 * l) * a1 + Rational(4 * l * l) * a2;
}

inline Rational even_beta_ref(const Rational& a0, const Rational& a1, const Rational& a2, int l)
{
  const Rational t(2 * l - 2);
  return Rational(2 * l) * Rational(2 * l - 1) * (a0 + t * a1 + t * t * a2);
}

// Odd sector: alpha~_m = A0 + (2m+1) A1 + (2m+1)^2 A2,
//             beta~_m  = (2m+1) 2m [A0 + (2m-1) A1 + (2m-1)^2 A2].
inline Rational odd_alpha_ref(const Rational& a0, const Rational& a1, const Rational& a2, int m)
{
  const Rational t(2 * m + 1);
  return a0 + t * a1 + t * t * a2;
}

inline Rational odd_beta_ref(const Rational& a0, const Rational& a1, const Rational& a2, int m)
{
  const Rational t(2 * m - 1);
  return Rational(2 * m + 1) * Rational(2 * m) * (a0 + t * a1 + t * t * a2);
}

/// Characteristic polynomial coefficients of a 3x3 matrix by cofactor
/// expansion: det(E - M) = E^3 + c2 E^2 + c1 E + c0.
inline std::array<double, 3> charpoly3(const Eigen::Matrix3d& m)
{
  const double trace = m.trace();
  const double minors = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                        m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  return {-trace, minors, -m.determinant()};
}

/// Random rational p / d with |p| <= span * d.
inline Rational random_rational(std::mt19937& rng, int span, int d)
{
  std::uniform_int_distribution<int> num(-span * d, span * d);
  return Rational(num(rng), d);
}

/// Nonzero random integer combination of a nullspace basis.
inline std::vector<Rational> sample_nullspace(std::mt19937& rng, const std::vector<std::vector<Rational>>& basis,
                                              int n2)
{
  std::vector<Rational> v(static_cast<std::size_t>(n2), Rational(0));
  if (basis.empty()) return v;
  std::uniform_int_distribution<int> coef(-3, 3);
  bool nonzero = false;
  while (!nonzero) {
    std::fill(v.begin(), v.end(), Rational(0));
    for (const auto& b : basis) {
      const Rational c(coef(rng), 1 + (coef(rng) + 3) % 3);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += c * b[i];
    }
    for (const auto& x : v) nonzero = nonzero || x != 0;
  }
  return v;
}

inline double max_abs(const Eigen::MatrixXd& m)
{
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace qes::testing
