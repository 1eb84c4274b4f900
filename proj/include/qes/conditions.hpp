#pragma once

#include "qes/hamiltonian.hpp"

#include <array>
#include <optional>
#include <vector>

namespace qes {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// One cutoff condition alpha_{N+1-depth, k} = 0, written over the unknowns
/// A_{0,k} .. A_{s0,k} of its own hop block.
struct CutoffRow {
  int k = 1;
  int depth = 1;
  int sector_index = 0;
  std::vector<Integer> entries;  // ((N+1-depth) q + r)^s, s = 0..s0
};

/// Linear system in the unknowns A_{s,k} that closes one or more sectors.
/// The system is block-diagonal over k.
struct CutoffSystem {
  CouplingShape shape;
  std::vector<SectorBasis> sectors;
  std::vector<CutoffRow> rows;

  /// rows x shape.unknowns() matrix in CouplingShape::index column order.
  RationalMatrix dense() const;
  int rank() const;
};

struct FeasibilityReport {
  int n1 = 0;  // conditions per sector: k0 (k0 + 1) / 2
  int n2 = 0;  // unknowns: (s0 + 1) k0
  bool feasible = false;
};

/// Rows alpha_{N+1-i,k} = 0 for k = 1..k0, i = 1..k. Rows whose index
/// N+1-i would be negative do not correspond to a basis element and are
/// omitted, so the row count is n1 whenever N + 1 >= k0.
CutoffSystem build_cutoff_system(CouplingShape shape, const SectorBasis& sector);

/// Stacks the rows of two systems over the same unknowns.
CutoffSystem combine(const CutoffSystem& a, const CutoffSystem& b);

/// Exact nullspace basis, one flat coupling vector per free unknown, each
/// with the free unknown set positive and denominators cleared. Solved block
/// by block over k. Empty when only the zero vector solves the system.
std::vector<std::vector<Rational>> solve_cutoff_system(const CutoffSystem& system);

/// Reduced row echelon form over the rationals. Returns pivot columns.
std::vector<int> reduce_row_echelon(RationalMatrix& m);

/// Exact nullspace of a dense rational matrix with `cols` columns.
std::vector<std::vector<Rational>> nullspace(RationalMatrix m, int cols);

struct CutoffViolation {
  int n = 0;
  int k = 1;
  Rational value;
};

/// First (k, n) with alpha_{n,k} != 0 among the closing conditions, if any.
std::optional<CutoffViolation> find_cutoff_violation(const HamiltonianSpec& spec, const SectorBasis& sector);

/// True iff alpha_{N+1-i,k} == 0 exactly for every k and i = 1..k.
bool check_cutoff(const HamiltonianSpec& spec, const SectorBasis& sector);

FeasibilityReport feasibility(CouplingShape shape);

/// Printed two-level relations for the s0 = 2, k0 = 1, q = 2 even family:
/// (A0, A1, A2) = (2L(2L-3), 3-4L, 1) * A2. They give alpha_L = 0,
/// alpha_{L-1} = -2 A2 and beta_L = -4L(2L-1) A2. For L >= 2 they do not make
/// beta_{L-1} vanish, so the pair {x^(2L-2), x^(2L)} is not an invariant
/// block; use isolated_pair_system for that. Throws for L < 1.
std::array<Rational, 3> two_level_relations(int L);

/// Conditions isolating the pair {top-1, top} of a single-hop sector:
/// alpha_{top,1} = 0 and beta_{top-1,1} = 0 (equivalently alpha_{top-2,1} = 0
/// when top >= 2). Requires top >= 1.
CutoffSystem isolated_pair_system(int s0, const SectorBasis& sector);

struct SectorCheck {
  bool even_ok = false;
  bool odd_ok = false;
  bool sl2_expressible = false;
};

/// Even sector closed at L and odd sector at M (q = 2 only). Both closing at
/// once is the case where H can be written through the sl2 generators.
SectorCheck simultaneous_sector_check(const HamiltonianSpec& spec, int L, int M);

}  // namespace qes
