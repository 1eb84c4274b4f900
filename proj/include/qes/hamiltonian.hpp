#pragma once

#include "qes/rational.hpp"

#include <string>
#include <vector>

namespace qes {

/// Residue-class basis {x^(q n + r) : n = 0..top}. Element n stands for the
/// unnormalized state with q n + r quanta. For q = 2 the r = 0 and r = 1
/// classes are the even and odd sectors.
struct SectorBasis {
  int q = 2;
  int r = 0;
  int top = 0;

  static SectorBasis even(int top) { return {2, 0, top}; }
  static SectorBasis odd(int top) { return {2, 1, top}; }

  int dim() const { return top + 1; }
  long particles(int n) const { return static_cast<long>(q) * n + r; }
  bool contains_particles(long m) const
  {
    return m >= r && (m - r) % q == 0 && (m - r) / q <= top;
  }

  friend bool operator==(const SectorBasis&, const SectorBasis&) = default;
};

/// Throws std::invalid_argument unless q >= 1, 0 <= r < q and top >= 0.
void check_sector(const SectorBasis& sector);

/// (s0, k0) of the off-diagonal coupling table.
struct CouplingShape {
  int s0 = 0;
  int k0 = 1;

  int unknowns() const { return (s0 + 1) * k0; }
  /// Flat position of A_{s,k}: blocks of s0 + 1 entries per hop k.
  int index(int s, int k) const { return (k - 1) * (s0 + 1) + s; }

  friend bool operator==(const CouplingShape&, const CouplingShape&) = default;
};

/// H = c + sum_p eps_p (a+a)^p
///       + sum_{s,k} A_{s,k} [ (a+a)^s a^(kq) + (a+)^(kq) (a+a)^s ].
///
/// All coefficients are exact rationals. The constant c is zero unless set;
/// it exists so that identity factors can be written in product Hamiltonians.
class HamiltonianSpec {
 public:
  /// `couplings` holds the flat table in CouplingShape::index order and must
  /// have exactly shape.unknowns() entries.
  HamiltonianSpec(int q, std::vector<Rational> eps, CouplingShape shape, std::vector<Rational> couplings,
                  Rational constant = 0);

  /// Single-hop (k0 = 1) spec with A_s = couplings[s].
  static HamiltonianSpec single_hop(int q, std::vector<Rational> eps, std::vector<Rational> couplings);

  /// c * identity.
  static HamiltonianSpec identity(int q, Rational c = 1);

  int q() const { return q_; }
  int p0() const { return static_cast<int>(eps_.size()); }
  int s0() const { return shape_.s0; }
  int k0() const { return shape_.k0; }
  const CouplingShape& shape() const { return shape_; }

  /// eps_p for 1 <= p <= p0.
  const Rational& eps(int p) const;
  const std::vector<Rational>& eps_list() const { return eps_; }
  /// A_{s,k}; zero outside the stored table.
  Rational coupling(int s, int k) const;
  const std::vector<Rational>& couplings() const { return couplings_; }
  const Rational& constant() const { return constant_; }

  bool has_couplings() const;

  HamiltonianSpec with_couplings(std::vector<Rational> couplings) const;
  HamiltonianSpec with_eps(int p, Rational value) const;

  friend bool operator==(const HamiltonianSpec&, const HamiltonianSpec&) = default;

 private:
  int q_;
  std::vector<Rational> eps_;
  CouplingShape shape_;
  std::vector<Rational> couplings_;
  Rational constant_;
};

// Coefficient functions of H acting on the monomial basis:
//   H x^(qn+r) = gamma_n x^(qn+r) + sum_k alpha_{n,k} x^(q(n+k)+r)
//                                 + sum_k beta_{n,k}  x^(q(n-k)+r)
// Exact and floating variants. n must lie in [0, sector.top] and k in [1, k0];
// violations throw std::out_of_range.

Rational gamma_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n);
Rational alpha_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k);
Rational beta_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k);

double gamma(const HamiltonianSpec& spec, const SectorBasis& sector, int n);
double alpha(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k);
double beta(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k);

/// sum_s A_{s,k} m^s: the polynomial behind alpha, evaluated at particle
/// number m (any m >= 0, no sector range check).
Rational hop_polynomial(const HamiltonianSpec& spec, long m, int k);

enum class GroundState { WellDefined, Conditional, IllDefined, Unknown };

struct Validity {
  GroundState status = GroundState::Unknown;
  std::string message;
};

std::string to_string(GroundState status);

/// Boundedness of H from below for the single-hop q = 2 family.
/// WellDefined when p0 > s0 + 2; Conditional when p0 = s0 + 2 and
/// eps_p0 >= 2 |A_{s0,1}|; IllDefined otherwise. Unknown for k0 > 1 or q != 2.
Validity validate_ground_state(const HamiltonianSpec& spec);

/// <m|H|n> in the orthonormal number basis.
double fock_matrix_element(const HamiltonianSpec& spec, long m, long n);

}  // namespace qes
