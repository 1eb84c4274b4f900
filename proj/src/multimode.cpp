#include "qes/multimode.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <stdexcept>

namespace qes {

namespace {

void check_strides(const ProductHamiltonian& ph)
{
  check_sector(ph.sector_a);
  check_sector(ph.sector_b);
  if (ph.terms.empty()) throw std::invalid_argument("product Hamiltonian has no terms");
  for (const auto& t : ph.terms) {
    if (t.mode_a.q() != ph.sector_a.q) throw std::invalid_argument("mode-a factor stride differs from its sector");
    if (t.mode_b.q() != ph.sector_b.q) throw std::invalid_argument("mode-b factor stride differs from its sector");
  }
}

}  // namespace

bool check_product_invariance(const ProductHamiltonian& ph)
{
  check_strides(ph);
  for (const auto& t : ph.terms) {
    if (!check_cutoff(t.mode_a, ph.sector_a) || !check_cutoff(t.mode_b, ph.sector_b)) return false;
  }
  return true;
}

Eigen::MatrixXd build_product_matrix(const ProductHamiltonian& ph)
{
  check_strides(ph);
  if (ph.dim() > max_dimension()) {
    throw std::length_error("product dimension " + std::to_string(ph.dim()) + " exceeds the cap of " +
                            std::to_string(max_dimension()));
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ph.dim(), ph.dim());
  for (const auto& t : ph.terms) {
    const auto a = build_subspace_matrix(t.mode_a, ph.sector_a);
    const auto b = build_subspace_matrix(t.mode_b, ph.sector_b);
    m += to_double(t.weight) * Eigen::kroneckerProduct(a.entries, b.entries).eval();
  }
  return m;
}

Eigen::MatrixXd symmetrize_product(const Eigen::MatrixXd& m, const SectorBasis& a, const SectorBasis& b)
{
  const int db = b.dim();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    for (Eigen::Index row = 0; row < m.rows(); ++row) {
      const double v = m(row, col);
      if (v == 0.0) continue;
      const int ia = static_cast<int>(row) / db;
      const int ib = static_cast<int>(row) % db;
      const int ja = static_cast<int>(col) / db;
      const int jb = static_cast<int>(col) % db;
      s(row, col) = v * scale_ratio(a, ia, ja) * scale_ratio(b, ib, jb);
    }
  }
  return s;
}

SpectrumResult product_spectrum(const ProductHamiltonian& ph, double tol)
{
  const Eigen::MatrixXd m = build_product_matrix(ph);
  const auto la = log_scale(ph.sector_a);
  const auto lb = log_scale(ph.sector_b);
  std::vector<double> scale;
  scale.reserve(static_cast<std::size_t>(ph.dim()));
  for (double x : la) {
    for (double y : lb) scale.push_back(x + y);
  }
  return eigen_symmetric(symmetrize_product(m, ph.sector_a, ph.sector_b), scale, tol);
}

Eigen::MatrixXd build_truncated_product(const ProductHamiltonian& ph, int n_max_a, int n_max_b)
{
  check_strides(ph);
  const int dim = (n_max_a + 1) * (n_max_b + 1);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : ph.terms) {
    const auto a = build_truncated(t.mode_a, std::max(n_max_a, t.mode_a.q() * t.mode_a.k0()));
    const auto b = build_truncated(t.mode_b, std::max(n_max_b, t.mode_b.q() * t.mode_b.k0()));
    const auto ta = a.entries.topLeftCorner(n_max_a + 1, n_max_a + 1);
    const auto tb = b.entries.topLeftCorner(n_max_b + 1, n_max_b + 1);
    h += to_double(t.weight) * Eigen::kroneckerProduct(ta, tb).eval();
  }
  return h;
}

MatchReport match_product_oracle(const SpectrumResult& qes, const ProductHamiltonian& ph, int n_max_a, int n_max_b,
                                 double tol)
{
  if (n_max_a < ph.sector_a.particles(ph.sector_a.top) || n_max_b < ph.sector_b.particles(ph.sector_b.top)) {
    throw std::invalid_argument("two-mode truncation does not contain the product sector");
  }
  return match_levels(qes.eigenvalues, jacobi_eigenvalues(build_truncated_product(ph, n_max_a, n_max_b)), tol);
}

}  // namespace qes
