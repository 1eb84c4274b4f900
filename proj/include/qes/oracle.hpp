#pragma once

#include "qes/hamiltonian.hpp"
#include "qes/spectra.hpp"

#include <Eigen/Dense>

#include <vector>

namespace qes {

// Brute-force reference: H restricted to particle numbers 0..n_max, built
// from ladder-operator matrices and diagonalized with a cyclic Jacobi
// iteration. Nothing here goes through the monomial coefficient functions or
// the symmetrized sector matrices.

struct TruncatedMatrix {
  int n_max = 0;
  Eigen::MatrixXd entries;
};

/// Requires n_max >= q k0 (std::invalid_argument otherwise).
TruncatedMatrix build_truncated(const HamiltonianSpec& spec, int n_max);

/// q (N + 3) + r: three shells past the top of the sector.
int default_n_max(const SectorBasis& sector);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Exact zeros between decoupled index sets stay exactly zero, so each block
/// is diagonalized to its own working precision.
std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a);

struct SpectrumMatch {
  double qes = 0.0;
  double oracle = 0.0;
  double gap = 0.0;
};

struct MatchReport {
  std::vector<SpectrumMatch> matched;
  std::vector<double> unmatched;
  double tol = 0.0;

  bool ok() const { return unmatched.empty(); }
  double max_gap() const;
};

/// Greedy nearest matching without reuse: every QES level is paired with the
/// closest unused reference level; it counts as matched when
/// gap <= tol (1 + |E|). Equal gaps go to the lower index.
MatchReport match_levels(const std::vector<double>& qes, const std::vector<double>& reference, double tol);

/// Truncated-Fock certification of a sector spectrum. Requires
/// n_max >= qN + r.
MatchReport match_spectra(const SpectrumResult& qes, const HamiltonianSpec& spec, const SectorBasis& sector,
                          int n_max, double tol);

/// True iff every truncated-matrix element joining {qn + r : n <= N} to the
/// rest of 0..n_max vanishes, decided with exact rational coefficient sums.
bool block_decoupling_check(const HamiltonianSpec& spec, const SectorBasis& sector, int n_max);

}  // namespace qes
