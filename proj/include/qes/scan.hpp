#pragma once

#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qes {

/// A_{s,k} or eps_p, written "A[s,k]", "A[s]" (k = 1) or "eps[p]".
struct ScanVariable {
  enum class Kind { Coupling, Eps };
  Kind kind = Kind::Coupling;
  int s = 0;
  int k = 1;
  int p = 1;

  std::string label() const;
};

ScanVariable parse_scan_variable(std::string_view text);

/// How the cutoff is kept when a coupling is swept.
///   Scale:   all couplings scale with the swept one (the base spec must be
///            closed and the swept coupling nonzero in it).
///   Resolve: the swept coupling and the other free unknowns of the combined
///            cutoff system keep their values; pivot unknowns are re-solved.
enum class ScanMode { Scale, Resolve };

ScanMode parse_scan_mode(std::string_view text);

class ScanError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The spec at one point of a sweep, closed on every sector.
HamiltonianSpec scan_point(const HamiltonianSpec& base, const std::vector<SectorBasis>& sectors,
                           const ScanVariable& variable, const Rational& value, ScanMode mode);

/// `steps` equally spaced exact values from `from` to `to` inclusive.
std::vector<Rational> scan_grid(const Rational& from, const Rational& to, int steps);

}  // namespace qes
