#pragma once

#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

/// Thrown when a sector is not closed under H; carries the first nonzero
/// closing coefficient.
class InvariantSubspaceViolated : public std::runtime_error {
 public:
  InvariantSubspaceViolated(CutoffViolation violation, const std::string& what)
      : std::runtime_error(what), violation_(std::move(violation))
  {
  }
  const CutoffViolation& violation() const { return violation_; }

 private:
  CutoffViolation violation_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix of H on a closed sector in monomial coordinates. Column n holds
/// gamma_n on the diagonal, alpha_{n,k} in row n+k and beta_{n,k} in row n-k.
struct BandMatrix {
  SectorBasis sector;
  int bandwidth = 1;
  Eigen::MatrixXd entries;

  int dim() const { return static_cast<int>(entries.rows()); }
};

struct SpectrumResult {
  std::vector<double> eigenvalues;                   // ascending
  std::vector<std::vector<double>> vectors_monomial; // coefficients on x^(qn+r)
  std::vector<std::vector<double>> vectors_fock;     // unit norm, number basis
  std::vector<double> residuals;                     // ||S v - E v||_2 per pair
  double residual_max = 0.0;
};

struct TwoLevelRoots {
  double lower = 0.0;
  double upper = 0.0;
  bool complex_pair = false;  // negative discriminant: lower/upper hold the real part
  double imag = 0.0;
};

/// Sector dimension cap; QES_BOSE_MAX_DIM overrides the default of 512.
int max_dimension();

/// Throws InvariantSubspaceViolated unless check_cutoff(spec, sector).
BandMatrix build_subspace_matrix(const HamiltonianSpec& spec, const SectorBasis& sector);

/// D_i / D_j with D_n = sqrt((qn+r)!), accumulated as a product of at most
/// |m_i - m_j| factors.
double scale_ratio(const SectorBasis& sector, int i, int j);

/// log D_n for every basis element.
std::vector<double> log_scale(const SectorBasis& sector);

/// S = D M D^-1, the matrix in the orthonormal number basis.
Eigen::MatrixXd symmetrize(const BandMatrix& m);

/// (g_a + g_b)/2 -+ sqrt((g_a - g_b)^2/4 + product).
TwoLevelRoots eigen_2x2(double gamma_a, double gamma_b, double offdiag_product);

/// Roots of E^3 - (g1+g2) E^2 + [g1 g2 - 16(5A1^2 + 52A1A2 + 140A2^2)] E
/// + 32 g2 (A1 + 4A2)^2 for the s0 <= 2, k0 = 1, q = 2 family closed at L = 2
/// (alpha_2 = 0 is required). Sorted ascending.
std::array<double, 3> eigen_cubic_h1(const HamiltonianSpec& spec, double gamma1, double gamma2);

/// Coefficients (c2, c1, c0) of E^3 + c2 E^2 + c1 E + c0 as printed for the
/// L = 2 family.
std::array<double, 3> cubic_h1_coefficients(const HamiltonianSpec& spec, double gamma1, double gamma2);

/// Dense symmetric eigensolve of symmetrize(m). Throws ConvergenceError when
/// the solver fails or any residual exceeds tol * ||S||_2.
SpectrumResult eigen_general(const BandMatrix& m, double tol = 1e-12);

/// Shared driver: eigensolve a symmetric S and map vectors back through
/// exp(-log_scale).
SpectrumResult eigen_symmetric(const Eigen::MatrixXd& s, const std::vector<double>& log_scale, double tol);

}  // namespace qes
