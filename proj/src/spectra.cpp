#include "qes/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace qes {

int max_dimension()
{
  constexpr int default_cap = 512;
  if (const char* env = std::getenv("QES_BOSE_MAX_DIM")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 1'000'000) return static_cast<int>(v);
  }
  return default_cap;
}

BandMatrix build_subspace_matrix(const HamiltonianSpec& spec, const SectorBasis& sector)
{
  check_sector(sector);
  if (auto bad = find_cutoff_violation(spec, sector)) {
    std::string label = spec.k0() == 1 ? "alpha_" + std::to_string(bad->n)
                                       : "alpha_{" + std::to_string(bad->n) + "," + std::to_string(bad->k) + "}";
    throw InvariantSubspaceViolated(*bad, "sector (q=" + std::to_string(sector.q) + ", r=" + std::to_string(sector.r) +
                                              ", N=" + std::to_string(sector.top) + ") is not invariant: " + label +
                                              " = " + to_string(bad->value));
  }
  if (sector.dim() > max_dimension()) {
    throw std::length_error("sector dimension " + std::to_string(sector.dim()) + " exceeds the cap of " +
                            std::to_string(max_dimension()));
  }

  const int dim = sector.dim();
  BandMatrix out{sector, spec.k0(), Eigen::MatrixXd::Zero(dim, dim)};
  for (int n = 0; n < dim; ++n) {
    out.entries(n, n) = gamma(spec, sector, n);
    for (int k = 1; k <= spec.k0(); ++k) {
      if (n + k < dim) out.entries(n + k, n) = alpha(spec, sector, n, k);
      if (n - k >= 0) out.entries(n - k, n) = beta(spec, sector, n, k);
    }
  }
  return out;
}

double scale_ratio(const SectorBasis& sector, int i, int j)
{
  if (i == j) return 1.0;
  const long mi = sector.particles(i);
  const long mj = sector.particles(j);
  const long lo = std::min(mi, mj);
  const long hi = std::max(mi, mj);
  double product = 1.0;
  for (long t = lo + 1; t <= hi; ++t) product *= static_cast<double>(t);
  const double root = std::sqrt(product);
  return mi > mj ? root : 1.0 / root;
}

std::vector<double> log_scale(const SectorBasis& sector)
{
  std::vector<double> out(static_cast<std::size_t>(sector.dim()));
  for (int n = 0; n < sector.dim(); ++n) {
    out[static_cast<std::size_t>(n)] = 0.5 * std::lgamma(static_cast<double>(sector.particles(n)) + 1.0);
  }
  return out;
}

Eigen::MatrixXd symmetrize(const BandMatrix& m)
{
  const int dim = m.dim();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      const double v = m.entries(i, j);
      if (v != 0.0) s(i, j) = v * scale_ratio(m.sector, i, j);
    }
  }
  return s;
}

TwoLevelRoots eigen_2x2(double gamma_a, double gamma_b, double offdiag_product)
{
  const double mean = 0.5 * (gamma_a + gamma_b);
  const double half_gap = 0.5 * (gamma_a - gamma_b);
  const double disc = half_gap * half_gap + offdiag_product;
  TwoLevelRoots out;
  if (disc < 0.0) {
    out.lower = out.upper = mean;
    out.complex_pair = true;
    out.imag = std::sqrt(-disc);
    return out;
  }
  const double root = std::sqrt(disc);
  out.lower = mean - root;
  out.upper = mean + root;
  return out;
}

namespace {

void require_h1_family(const HamiltonianSpec& spec)
{
  if (spec.q() != 2 || spec.k0() != 1 || spec.s0() > 2) {
    throw std::invalid_argument("closed-form cubic applies to the q = 2, k0 = 1, s0 <= 2 family");
  }
}

std::array<double, 3> real_cubic_roots(double a, double b, double c)
{
  // x^3 + a x^2 + b x + c, x = t - a/3
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  std::array<double, 3> t{};
  if (p < 0.0) {
    const double r = 2.0 * std::sqrt(-p / 3.0);
    double arg = 3.0 * q / (p * r);
    arg = std::clamp(arg, -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int i = 0; i < 3; ++i) t[static_cast<std::size_t>(i)] = r * std::cos(phi - 2.0 * std::numbers::pi * i / 3.0);
  } else {
    t.fill(std::cbrt(-q));
  }

  std::array<double, 3> x{};
  auto f = [&](double v) { return ((v + a) * v + b) * v + c; };
  auto df = [&](double v) { return (3.0 * v + 2.0 * a) * v + b; };
  for (std::size_t i = 0; i < 3; ++i) {
    double v = t[i] - shift;
    for (int it = 0; it < 3; ++it) {
      const double d = df(v);
      if (d == 0.0) break;
      const double next = v - f(v) / d;
      if (std::abs(f(next)) >= std::abs(f(v))) break;
      v = next;
    }
    x[i] = v;
  }
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

std::array<double, 3> cubic_h1_coefficients(const HamiltonianSpec& spec, double gamma1, double gamma2)
{
  require_h1_family(spec);
  const double a1 = to_double(spec.coupling(1, 1));
  const double a2 = to_double(spec.coupling(2, 1));
  const double c2 = -(gamma1 + gamma2);
  const double c1 = gamma1 * gamma2 - 16.0 * (5.0 * a1 * a1 + 52.0 * a1 * a2 + 140.0 * a2 * a2);
  const double c0 = 32.0 * gamma2 * (a1 + 4.0 * a2) * (a1 + 4.0 * a2);
  return {c2, c1, c0};
}

std::array<double, 3> eigen_cubic_h1(const HamiltonianSpec& spec, double gamma1, double gamma2)
{
  require_h1_family(spec);
  if (!check_cutoff(spec, SectorBasis::even(2))) {
    throw std::invalid_argument("closed-form cubic needs alpha_2 = A0 + 4A1 + 16A2 = 0");
  }
  const auto [c2, c1, c0] = cubic_h1_coefficients(spec, gamma1, gamma2);
  return real_cubic_roots(c2, c1, c0);
}

SpectrumResult eigen_symmetric(const Eigen::MatrixXd& s, const std::vector<double>& log_scale, double tol)
{
  const int dim = static_cast<int>(s.rows());
  if (dim > max_dimension()) {
    throw std::length_error("matrix dimension " + std::to_string(dim) + " exceeds the cap of " +
                            std::to_string(max_dimension()));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  auto dump = [&]() {
    std::ostringstream os;
    os.precision(17);
    os << s;
    return os.str();
  };
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("symmetric eigensolver did not converge on\n" + dump());
  }

  const Eigen::VectorXd& values = solver.eigenvalues();
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  const double norm = dim > 0 ? values.cwiseAbs().maxCoeff() : 0.0;

  SpectrumResult out;
  for (int i = 0; i < dim; ++i) {
    Eigen::VectorXd v = vectors.col(i);
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    if (v(big) < 0) v = -v;

    const double residual = (s * v - values(i) * v).norm();
    if (residual > tol * norm) {
      std::ostringstream os;
      os.precision(17);
      os << "eigenpair " << i << " residual " << residual << " exceeds " << tol << " * " << norm << " on\n" << dump();
      throw ConvergenceError(os.str());
    }

    std::vector<double> fock(v.data(), v.data() + dim);
    std::vector<double> monomial(static_cast<std::size_t>(dim));
    for (int n = 0; n < dim; ++n) {
      monomial[static_cast<std::size_t>(n)] = v(n) * std::exp(-log_scale[static_cast<std::size_t>(n)]);
    }
    out.eigenvalues.push_back(values(i));
    out.vectors_fock.push_back(std::move(fock));
    out.vectors_monomial.push_back(std::move(monomial));
    out.residuals.push_back(residual);
    out.residual_max = std::max(out.residual_max, residual);
  }
  return out;
}

SpectrumResult eigen_general(const BandMatrix& m, double tol)
{
  return eigen_symmetric(symmetrize(m), log_scale(m.sector), tol);
}

}  // namespace qes
