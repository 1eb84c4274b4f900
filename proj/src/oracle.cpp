#include "qes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qes {

namespace {

// a|n> = sqrt(n)|n-1> on 0..n_max. Lowering never leaves the truncated
// space, so powers of this matrix are exact restrictions.
Eigen::MatrixXd lowering(int n_max)
{
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Exact diagonal of sum_s A_{s,k} N^s, one entry per particle number.
Eigen::VectorXd number_polynomial(const HamiltonianSpec& spec, int k, int n_max)
{
  Eigen::VectorXd d(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    Rational sum = 0;
    for (int s = 0; s <= spec.s0(); ++s) sum += spec.coupling(s, k) * pow(Rational(n), s);
    d(n) = to_double(sum);
  }
  return d;
}

}  // namespace

TruncatedMatrix build_truncated(const HamiltonianSpec& spec, int n_max)
{
  if (n_max < spec.q() * spec.k0()) {
    throw std::invalid_argument("truncation n_max=" + std::to_string(n_max) + " is below q*k0=" +
                                std::to_string(spec.q() * spec.k0()));
  }
  const int dim = n_max + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (int n = 0; n <= n_max; ++n) {
    Rational diag = spec.constant();
    for (int p = 1; p <= spec.p0(); ++p) diag += spec.eps(p) * pow(Rational(n), p);
    h(n, n) = to_double(diag);
  }

  const Eigen::MatrixXd a = lowering(n_max);
  Eigen::MatrixXd a_power = Eigen::MatrixXd::Identity(dim, dim);
  for (int k = 1; k <= spec.k0(); ++k) {
    for (int t = 0; t < spec.q(); ++t) a_power = a_power * a;
    // (a+a)^s a^(kq): N^s acts after lowering, i.e. scales rows.
    const Eigen::MatrixXd term = number_polynomial(spec, k, n_max).asDiagonal() * a_power;
    h += term + term.transpose();
  }
  return {n_max, std::move(h)};
}

int default_n_max(const SectorBasis& sector)
{
  return sector.q * (sector.top + 3) + sector.r;
}

std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a)
{
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigenvalues needs a square matrix");
  constexpr int max_sweeps = 100;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (off == 0.0) break;

    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // negligible against both diagonals: drop it
        if (std::abs(apq) <= 0.5 * eps * std::sqrt(std::abs(app) * std::abs(aqq)) ||
            (std::abs(app) + std::abs(aqq) == 0.0 && std::abs(apq) < std::numeric_limits<double>::min())) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int r = 0; r < n; ++r) {
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = c * arp - s * arq;
          a(r, q) = s * arp + c * arq;
        }
        for (int r = 0; r < n; ++r) {
          const double apr = a(p, r);
          const double aqr = a(q, r);
          a(p, r) = c * apr - s * aqr;
          a(q, r) = s * apr + c * aqr;
        }
        a(p, q) = a(q, p) = 0.0;
      }
    }
    if (!rotated) break;
    if (sweep == max_sweeps - 1) throw ConvergenceError("Jacobi iteration did not converge");
  }

  std::vector<double> values(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(values.begin(), values.end());
  return values;
}

double MatchReport::max_gap() const
{
  double g = 0.0;
  for (const auto& m : matched) g = std::max(g, m.gap);
  return g;
}

MatchReport match_levels(const std::vector<double>& qes, const std::vector<double>& reference, double tol)
{
  MatchReport report;
  report.tol = tol;
  std::vector<bool> used(reference.size(), false);
  for (double e : qes) {
    std::size_t best = reference.size();
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < reference.size(); ++j) {
      if (used[j]) continue;
      const double gap = std::abs(reference[j] - e);
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best < reference.size() && best_gap <= tol * (1.0 + std::abs(e))) {
      used[best] = true;
      report.matched.push_back({e, reference[best], best_gap});
    } else {
      report.unmatched.push_back(e);
    }
  }
  return report;
}

MatchReport match_spectra(const SpectrumResult& qes, const HamiltonianSpec& spec, const SectorBasis& sector,
                          int n_max, double tol)
{
  if (n_max < sector.particles(sector.top)) {
    throw std::invalid_argument("truncation n_max=" + std::to_string(n_max) + " does not contain the sector top " +
                                std::to_string(sector.particles(sector.top)));
  }
  const auto truncated = build_truncated(spec, std::max(n_max, spec.q() * spec.k0()));
  return match_levels(qes.eigenvalues, jacobi_eigenvalues(truncated.entries), tol);
}

bool block_decoupling_check(const HamiltonianSpec& spec, const SectorBasis& sector, int n_max)
{
  check_sector(sector);
  // Elements <m + kq|H|m> = (sum_s A_{s,k} m^s) sqrt((m+kq)!/m!); the root
  // never vanishes, so only the exact polynomial value matters.
  for (int n = 0; n <= sector.top; ++n) {
    const long inside = sector.particles(n);
    for (int k = 1; k <= spec.k0(); ++k) {
      const long hop = static_cast<long>(k) * spec.q();
      const long up = inside + hop;
      if (up <= n_max && !sector.contains_particles(up)) {
        Rational sum = 0;
        for (int s = 0; s <= spec.s0(); ++s) sum += spec.coupling(s, k) * pow(Rational(inside), s);
        if (sum != 0) return false;
      }
      const long down = inside - hop;
      if (down >= 0 && !sector.contains_particles(down)) {
        Rational sum = 0;
        for (int s = 0; s <= spec.s0(); ++s) sum += spec.coupling(s, k) * pow(Rational(down), s);
        if (sum != 0) return false;
      }
    }
  }
  return true;
}

}  // namespace qes
