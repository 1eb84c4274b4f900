#include "qes/scan.hpp"

#include <algorithm>
#include <regex>

namespace qes {

std::string ScanVariable::label() const
{
  if (kind == Kind::Eps) return "eps[" + std::to_string(p) + "]";
  return "A[" + std::to_string(s) + "," + std::to_string(k) + "]";
}

ScanVariable parse_scan_variable(std::string_view text)
{
  static const std::regex coupling(R"(\s*A\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]\s*)");
  static const std::regex eps(R"(\s*eps\[\s*(\d+)\s*\]\s*)");
  const std::string s(text);
  std::smatch m;
  ScanVariable v;
  if (std::regex_match(s, m, coupling)) {
    v.kind = ScanVariable::Kind::Coupling;
    v.s = std::stoi(m[1].str());
    v.k = m[2].matched ? std::stoi(m[2].str()) : 1;
    if (v.k < 1) throw std::invalid_argument("hop index in '" + s + "' must be >= 1");
    return v;
  }
  if (std::regex_match(s, m, eps)) {
    v.kind = ScanVariable::Kind::Eps;
    v.p = std::stoi(m[1].str());
    if (v.p < 1) throw std::invalid_argument("eps index in '" + s + "' must be >= 1");
    return v;
  }
  throw std::invalid_argument("scan variable must look like A[s,k] or eps[p], got '" + s + "'");
}

ScanMode parse_scan_mode(std::string_view text)
{
  if (text == "scale") return ScanMode::Scale;
  if (text == "resolve") return ScanMode::Resolve;
  throw std::invalid_argument("scan mode must be 'scale' or 'resolve', got '" + std::string(text) + "'");
}

namespace {

CutoffSystem joint_system(CouplingShape shape, const std::vector<SectorBasis>& sectors)
{
  if (sectors.empty()) throw ScanError("a sweep needs at least one sector");
  CutoffSystem sys = build_cutoff_system(shape, sectors.front());
  for (std::size_t i = 1; i < sectors.size(); ++i) sys = combine(sys, build_cutoff_system(shape, sectors[i]));
  return sys;
}

bool closed_on_all(const HamiltonianSpec& spec, const std::vector<SectorBasis>& sectors)
{
  return std::all_of(sectors.begin(), sectors.end(), [&](const auto& sec) { return check_cutoff(spec, sec); });
}

HamiltonianSpec resolve(const HamiltonianSpec& base, const std::vector<SectorBasis>& sectors, int swept,
                        const Rational& value)
{
  const CouplingShape shape = base.shape();
  const int cols = shape.unknowns();
  auto dense = joint_system(shape, sectors).dense();

  // Column order with the swept unknown last, so it stays free whenever the
  // system allows it.
  std::vector<int> order;
  for (int c = 0; c < cols; ++c) {
    if (c != swept) order.push_back(c);
  }
  order.push_back(swept);
  RationalMatrix permuted;
  for (const auto& row : dense) {
    std::vector<Rational> r;
    for (int c : order) r.push_back(row[static_cast<std::size_t>(c)]);
    permuted.push_back(std::move(r));
  }
  const auto pivots = reduce_row_echelon(permuted);
  if (std::find(pivots.begin(), pivots.end(), cols - 1) != pivots.end()) {
    throw ScanError("the cutoff conditions fix the swept coupling; it cannot be varied");
  }

  std::vector<Rational> x(static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j) {
    x[static_cast<std::size_t>(j)] = base.couplings()[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])];
  }
  x.back() = value;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const int pc = pivots[i];
    Rational v = 0;
    for (int j = 0; j < cols; ++j) {
      if (j == pc) continue;
      if (std::find(pivots.begin(), pivots.end(), j) != pivots.end()) continue;
      v -= permuted[i][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    }
    x[static_cast<std::size_t>(pc)] = v;
  }

  std::vector<Rational> couplings(static_cast<std::size_t>(cols));
  for (int j = 0; j < cols; ++j) couplings[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = x[static_cast<std::size_t>(j)];
  return base.with_couplings(std::move(couplings));
}

}  // namespace

HamiltonianSpec scan_point(const HamiltonianSpec& base, const std::vector<SectorBasis>& sectors,
                           const ScanVariable& variable, const Rational& value, ScanMode mode)
{
  if (variable.kind == ScanVariable::Kind::Eps) {
    HamiltonianSpec spec = base.with_eps(variable.p, value);
    if (!closed_on_all(spec, sectors)) {
      throw ScanError("the base Hamiltonian is not closed on the requested sectors");
    }
    return spec;
  }

  if (variable.s > base.s0() || variable.k > base.k0()) {
    throw ScanError("scan variable " + variable.label() + " is outside the coupling table");
  }
  const int swept = base.shape().index(variable.s, variable.k);

  if (mode == ScanMode::Resolve) return resolve(base, sectors, swept, value);

  if (!closed_on_all(base, sectors)) {
    throw ScanError("scale mode needs a base Hamiltonian that is closed on the requested sectors");
  }
  const Rational& reference = base.couplings()[static_cast<std::size_t>(swept)];
  if (reference == 0) throw ScanError("scale mode needs a nonzero base value for " + variable.label());
  const Rational factor = value / reference;
  auto couplings = base.couplings();
  for (auto& a : couplings) a *= factor;
  return base.with_couplings(std::move(couplings));
}

std::vector<Rational> scan_grid(const Rational& from, const Rational& to, int steps)
{
  if (steps < 2) throw std::invalid_argument("a sweep needs at least 2 steps");
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid.push_back(from + (to - from) * Rational(i, steps - 1));
  return grid;
}

}  // namespace qes
