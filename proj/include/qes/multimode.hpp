#pragma once

#include "qes/hamiltonian.hpp"
#include "qes/oracle.hpp"
#include "qes/spectra.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qes {

/// One term w * H_a (x) h_b of a two-mode Hamiltonian.
struct ProductTerm {
  HamiltonianSpec mode_a;
  HamiltonianSpec mode_b;
  Rational weight = 1;
};

/// H = sum_i w_i H_a,i (x) h_b,i on the product of one sector per mode.
/// Basis pairs (n_a, n_b) are ordered row-major: index n_a (N_b + 1) + n_b.
struct ProductHamiltonian {
  std::vector<ProductTerm> terms;
  SectorBasis sector_a;
  SectorBasis sector_b;

  int dim() const { return sector_a.dim() * sector_b.dim(); }
};

/// Every factor preserves its own sector.
bool check_product_invariance(const ProductHamiltonian& ph);

/// sum_i w_i M_a,i (x) M_b,i in monomial coordinates. Throws
/// InvariantSubspaceViolated when a factor is not closed on its sector.
Eigen::MatrixXd build_product_matrix(const ProductHamiltonian& ph);

/// (D_a (x) D_b) M (D_a (x) D_b)^-1.
Eigen::MatrixXd symmetrize_product(const Eigen::MatrixXd& m, const SectorBasis& a, const SectorBasis& b);

SpectrumResult product_spectrum(const ProductHamiltonian& ph, double tol = 1e-12);

/// Two-mode truncated Fock matrix sum_i w_i T_a,i (x) T_b,i with per-mode
/// truncations 0..n_max_a and 0..n_max_b.
Eigen::MatrixXd build_truncated_product(const ProductHamiltonian& ph, int n_max_a, int n_max_b);

MatchReport match_product_oracle(const SpectrumResult& qes, const ProductHamiltonian& ph, int n_max_a, int n_max_b,
                                 double tol);

}  // namespace qes
