#include "qes/conditions.hpp"

#include <stdexcept>
#include <utility>

namespace qes {

RationalMatrix CutoffSystem::dense() const
{
  RationalMatrix m;
  m.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Rational> full(static_cast<std::size_t>(shape.unknowns()), Rational(0));
    for (int s = 0; s <= shape.s0; ++s) {
      full[static_cast<std::size_t>(shape.index(s, row.k))] = Rational(row.entries[static_cast<std::size_t>(s)]);
    }
    m.push_back(std::move(full));
  }
  return m;
}

int CutoffSystem::rank() const
{
  auto m = dense();
  return static_cast<int>(reduce_row_echelon(m).size());
}

std::vector<int> reduce_row_echelon(RationalMatrix& m)
{
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m.front().size());
  int lead_row = 0;
  for (int c = 0; c < cols && lead_row < rows; ++c) {
    int pivot = -1;
    for (int r = lead_row; r < rows; ++r) {
      if (m[r][c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[lead_row]);
    const Rational inv = 1 / m[lead_row][c];
    for (auto& x : m[lead_row]) x *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == lead_row || m[r][c] == 0) continue;
      const Rational factor = m[r][c];
      for (int j = c; j < cols; ++j) m[r][j] -= factor * m[lead_row][j];
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return pivots;
}

std::vector<std::vector<Rational>> nullspace(RationalMatrix m, int cols)
{
  std::vector<int> pivots = reduce_row_echelon(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(cols), Rational(0));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[static_cast<std::size_t>(pivots[i])] = -m[i][static_cast<std::size_t>(free)];
    }
    basis.push_back(clear_denominators(std::move(v)));
  }
  return basis;
}

CutoffSystem build_cutoff_system(CouplingShape shape, const SectorBasis& sector)
{
  check_sector(sector);
  if (shape.s0 < 0 || shape.k0 < 1) throw std::invalid_argument("invalid coupling shape");
  CutoffSystem sys{shape, {sector}, {}};
  for (int k = 1; k <= shape.k0; ++k) {
    for (int i = 1; i <= k; ++i) {
      const int n = sector.top + 1 - i;
      if (n < 0) continue;
      CutoffRow row{k, i, 0, {}};
      const Integer point(sector.particles(n));
      Integer power = 1;
      for (int s = 0; s <= shape.s0; ++s) {
        row.entries.push_back(power);
        power *= point;
      }
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

CutoffSystem combine(const CutoffSystem& a, const CutoffSystem& b)
{
  if (!(a.shape == b.shape)) throw std::invalid_argument("cannot combine cutoff systems of different shapes");
  CutoffSystem out = a;
  const int offset = static_cast<int>(a.sectors.size());
  out.sectors.insert(out.sectors.end(), b.sectors.begin(), b.sectors.end());
  for (auto row : b.rows) {
    row.sector_index += offset;
    out.rows.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Rational>> solve_cutoff_system(const CutoffSystem& system)
{
  const auto& shape = system.shape;
  const int block = shape.s0 + 1;
  std::vector<std::vector<Rational>> basis;
  for (int k = 1; k <= shape.k0; ++k) {
    RationalMatrix rows;
    for (const auto& row : system.rows) {
      if (row.k != k) continue;
      std::vector<Rational> r;
      for (const auto& e : row.entries) r.emplace_back(e);
      rows.push_back(std::move(r));
    }
    for (auto& v : nullspace(std::move(rows), block)) {
      std::vector<Rational> full(static_cast<std::size_t>(shape.unknowns()), Rational(0));
      for (int s = 0; s < block; ++s) full[static_cast<std::size_t>(shape.index(s, k))] = v[static_cast<std::size_t>(s)];
      basis.push_back(std::move(full));
    }
  }
  return basis;
}

std::optional<CutoffViolation> find_cutoff_violation(const HamiltonianSpec& spec, const SectorBasis& sector)
{
  for (int k = 1; k <= spec.k0(); ++k) {
    for (int i = 1; i <= k; ++i) {
      const int n = sector.top + 1 - i;
      if (n < 0) continue;
      Rational a = alpha_exact(spec, sector, n, k);
      if (a != 0) return CutoffViolation{n, k, std::move(a)};
    }
  }
  return std::nullopt;
}

bool check_cutoff(const HamiltonianSpec& spec, const SectorBasis& sector)
{
  return !find_cutoff_violation(spec, sector).has_value();
}

FeasibilityReport feasibility(CouplingShape shape)
{
  FeasibilityReport report;
  report.n1 = shape.k0 * (shape.k0 + 1) / 2;
  report.n2 = (shape.s0 + 1) * shape.k0;
  report.feasible = report.n2 > report.n1;
  return report;
}

std::array<Rational, 3> two_level_relations(int L)
{
  if (L < 1) throw std::invalid_argument("two-level relations need L >= 1");
  const Integer l(L);
  return {Rational(2 * l * (2 * l - 3)), Rational(3 - 4 * l), Rational(1)};
}

CutoffSystem isolated_pair_system(int s0, const SectorBasis& sector)
{
  check_sector(sector);
  if (sector.top < 1) throw std::invalid_argument("an isolated pair needs top >= 1");
  const CouplingShape shape{s0, 1};
  CutoffSystem sys{shape, {sector}, {}};
  auto add_row = [&](int n) {
    CutoffRow row{1, sector.top + 1 - n, 0, {}};
    const Integer point(sector.particles(n));
    Integer power = 1;
    for (int s = 0; s <= s0; ++s) {
      row.entries.push_back(power);
      power *= point;
    }
    sys.rows.push_back(std::move(row));
  };
  add_row(sector.top);
  // beta_{top-1,1} = falling(m_{top-1}, q) * alpha_{top-2,1}; the falling
  // factorial is nonzero once top - 1 >= 1.
  if (sector.top >= 2) add_row(sector.top - 2);
  return sys;
}

SectorCheck simultaneous_sector_check(const HamiltonianSpec& spec, int L, int M)
{
  if (spec.q() != 2) throw std::invalid_argument("simultaneous sector check applies to q = 2");
  SectorCheck out;
  out.even_ok = check_cutoff(spec, SectorBasis::even(L));
  out.odd_ok = check_cutoff(spec, SectorBasis::odd(M));
  out.sl2_expressible = out.even_ok && out.odd_ok;
  return out;
}

}  // namespace qes
