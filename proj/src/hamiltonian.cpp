#include "qes/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace qes {

void check_sector(const SectorBasis& sector)
{
  if (sector.q < 1) throw std::invalid_argument("sector stride q must be >= 1");
  if (sector.r < 0 || sector.r >= sector.q) throw std::invalid_argument("sector offset must satisfy 0 <= r < q");
  if (sector.top < 0) throw std::invalid_argument("sector top index must be >= 0");
}

HamiltonianSpec::HamiltonianSpec(int q, std::vector<Rational> eps, CouplingShape shape,
                                 std::vector<Rational> couplings, Rational constant)
    : q_(q), eps_(std::move(eps)), shape_(shape), couplings_(std::move(couplings)), constant_(std::move(constant))
{
  if (q_ < 1) throw std::invalid_argument("hop stride q must be >= 1");
  if (shape_.s0 < 0) throw std::invalid_argument("s0 must be >= 0");
  if (shape_.k0 < 1) throw std::invalid_argument("k0 must be >= 1");
  if (static_cast<int>(couplings_.size()) != shape_.unknowns()) {
    throw std::invalid_argument("coupling table has " + std::to_string(couplings_.size()) + " entries, expected " +
                                std::to_string(shape_.unknowns()));
  }
}

HamiltonianSpec HamiltonianSpec::single_hop(int q, std::vector<Rational> eps, std::vector<Rational> couplings)
{
  if (couplings.empty()) couplings.emplace_back(0);
  CouplingShape shape{static_cast<int>(couplings.size()) - 1, 1};
  return HamiltonianSpec(q, std::move(eps), shape, std::move(couplings));
}

HamiltonianSpec HamiltonianSpec::identity(int q, Rational c)
{
  return HamiltonianSpec(q, {}, CouplingShape{0, 1}, {Rational(0)}, std::move(c));
}

const Rational& HamiltonianSpec::eps(int p) const
{
  if (p < 1 || p > p0()) throw std::out_of_range("eps index " + std::to_string(p) + " outside 1.." + std::to_string(p0()));
  return eps_[static_cast<std::size_t>(p - 1)];
}

Rational HamiltonianSpec::coupling(int s, int k) const
{
  if (s < 0 || s > shape_.s0 || k < 1 || k > shape_.k0) return 0;
  return couplings_[static_cast<std::size_t>(shape_.index(s, k))];
}

bool HamiltonianSpec::has_couplings() const
{
  for (const auto& a : couplings_) {
    if (a != 0) return true;
  }
  return false;
}

HamiltonianSpec HamiltonianSpec::with_couplings(std::vector<Rational> couplings) const
{
  return HamiltonianSpec(q_, eps_, shape_, std::move(couplings), constant_);
}

HamiltonianSpec HamiltonianSpec::with_eps(int p, Rational value) const
{
  if (p < 1) throw std::out_of_range("eps index must be >= 1");
  auto eps = eps_;
  if (static_cast<int>(eps.size()) < p) eps.resize(static_cast<std::size_t>(p), Rational(0));
  eps[static_cast<std::size_t>(p - 1)] = std::move(value);
  return HamiltonianSpec(q_, std::move(eps), shape_, couplings_, constant_);
}

namespace {

void check_pairing(const HamiltonianSpec& spec, const SectorBasis& sector)
{
  check_sector(sector);
  if (sector.q != spec.q()) {
    throw std::invalid_argument("sector stride " + std::to_string(sector.q) + " does not match Hamiltonian stride " +
                                std::to_string(spec.q()));
  }
}

void check_index(const SectorBasis& sector, int n)
{
  if (n < 0 || n > sector.top) {
    throw std::out_of_range("basis index " + std::to_string(n) + " outside 0.." + std::to_string(sector.top));
  }
}

void check_hop(const HamiltonianSpec& spec, int k)
{
  if (k < 1 || k > spec.k0()) {
    throw std::out_of_range("hop " + std::to_string(k) + " outside 1.." + std::to_string(spec.k0()));
  }
}

}  // namespace

Rational hop_polynomial(const HamiltonianSpec& spec, long m, int k)
{
  Rational sum = 0;
  Rational power = 1;
  const Rational base(m);
  for (int s = 0; s <= spec.s0(); ++s) {
    sum += spec.coupling(s, k) * power;
    power *= base;
  }
  return sum;
}

Rational gamma_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n)
{
  check_pairing(spec, sector);
  check_index(sector, n);
  const Rational m(sector.particles(n));
  Rational sum = spec.constant();
  Rational power = 1;
  for (int p = 1; p <= spec.p0(); ++p) {
    power *= m;
    sum += spec.eps(p) * power;
  }
  return sum;
}

Rational alpha_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k)
{
  check_pairing(spec, sector);
  check_index(sector, n);
  check_hop(spec, k);
  return hop_polynomial(spec, sector.particles(n), k);
}

Rational beta_exact(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k)
{
  check_pairing(spec, sector);
  check_index(sector, n);
  check_hop(spec, k);
  if (n < k) return 0;
  const long m = sector.particles(n);
  const long drop = static_cast<long>(k) * spec.q();
  Integer falling = 1;
  for (long t = 0; t < drop; ++t) falling *= Integer(m - t);
  return Rational(falling) * hop_polynomial(spec, m - drop, k);
}

double gamma(const HamiltonianSpec& spec, const SectorBasis& sector, int n)
{
  return to_double(gamma_exact(spec, sector, n));
}

double alpha(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k)
{
  return to_double(alpha_exact(spec, sector, n, k));
}

double beta(const HamiltonianSpec& spec, const SectorBasis& sector, int n, int k)
{
  return to_double(beta_exact(spec, sector, n, k));
}

std::string to_string(GroundState status)
{
  switch (status) {
    case GroundState::WellDefined: return "well-defined";
    case GroundState::Conditional: return "conditional";
    case GroundState::IllDefined: return "ill-defined";
    case GroundState::Unknown: return "unknown";
  }
  return "unknown";
}

Validity validate_ground_state(const HamiltonianSpec& spec)
{
  const int p0 = spec.p0();
  const int s0 = spec.s0();
  const std::string degrees = "p0=" + std::to_string(p0) + ", s0=" + std::to_string(s0);

  if (spec.k0() > 1 || spec.q() != 2) {
    return {GroundState::Unknown, "no ground-state criterion is available for k0 > 1 or q != 2 (" + degrees +
                                      ", k0=" + std::to_string(spec.k0()) + ", q=" + std::to_string(spec.q()) + ")"};
  }

  const Rational leading = p0 > 0 ? spec.eps(p0) : Rational(0);

  if (!spec.has_couplings()) {
    if (leading >= 0) return {GroundState::WellDefined, "well-defined ground state: no off-diagonal part, eps_p0 >= 0"};
    return {GroundState::IllDefined, "ill-defined ground state: no off-diagonal part and eps_p0 < 0"};
  }

  if (p0 > s0 + 2) {
    if (leading > 0) return {GroundState::WellDefined, "well-defined ground state: p0 > s0 + 2 (" + degrees + ")"};
    return {GroundState::IllDefined, "ill-defined ground state: leading eps_p0 is not positive (" + degrees + ")"};
  }
  if (p0 == s0 + 2) {
    const Rational bound = 2 * abs(spec.coupling(s0, 1));
    const std::string cmp = "eps_p0=" + to_string(leading) + ", 2|A_s0|=" + to_string(bound);
    if (leading >= bound && leading > 0) {
      return {GroundState::Conditional,
              "conditionally well-defined ground state: p0 = s0 + 2 and eps_p0 >= 2|A_s0| (" + cmp +
                  "; absolute value of A_s0 used)"};
    }
    return {GroundState::IllDefined,
            "ill-defined ground state: p0 = s0 + 2 but eps_p0 < 2|A_s0| (" + cmp + "; absolute value of A_s0 used)"};
  }
  return {GroundState::IllDefined, "ill-defined ground state: p0 < s0 + 2 (" + degrees + ")"};
}

double fock_matrix_element(const HamiltonianSpec& spec, long m, long n)
{
  if (m < 0 || n < 0) throw std::out_of_range("particle numbers must be non-negative");
  if (m == n) {
    double sum = to_double(spec.constant());
    double power = 1.0;
    for (int p = 1; p <= spec.p0(); ++p) {
      power *= static_cast<double>(n);
      sum += to_double(spec.eps(p)) * power;
    }
    return sum;
  }
  const long lower = m < n ? m : n;
  const long gap = m < n ? n - m : m - n;
  if (gap % spec.q() != 0) return 0.0;
  const long k = gap / spec.q();
  if (k > spec.k0()) return 0.0;

  // <lower + kq| (a+)^(kq) (a+a)^s |lower> = lower^s sqrt((lower+kq)!/lower!)
  double ratio = 1.0;
  for (long t = 1; t <= gap; ++t) ratio *= static_cast<double>(lower + t);
  return to_double(hop_polynomial(spec, lower, static_cast<int>(k))) * std::sqrt(ratio);
}

}  // namespace qes
