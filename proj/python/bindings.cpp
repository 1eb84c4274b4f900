#include "qes/conditions.hpp"
#include "qes/hamiltonian.hpp"
#include "qes/io.hpp"
#include "qes/multimode.hpp"
#include "qes/oracle.hpp"
#include "qes/spectra.hpp"

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace qes;

namespace {

// Coefficients cross the boundary as exact rationals: Fraction, int and str
// go through their exact text, floats through repr (0.4 -> 2/5).
Rational to_rational(const py::handle& h)
{
  if (py::isinstance<py::bool_>(h)) throw py::type_error("coefficients cannot be bool");
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  if (py::isinstance(h, fraction)) {
    return parse_rational(py::str(h.attr("numerator")).cast<std::string>() + "/" +
                          py::str(h.attr("denominator")).cast<std::string>());
  }
  if (py::isinstance<py::str>(h) || py::isinstance<py::int_>(h)) return parse_rational(py::str(h).cast<std::string>());
  if (py::isinstance<py::float_>(h)) return parse_rational(py::repr(h).cast<std::string>());
  throw py::type_error("coefficient must be a Fraction, int, float or str");
}

py::object to_fraction(const Rational& r)
{
  static const py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(r));
}

py::list fractions(const std::vector<Rational>& v)
{
  py::list out;
  for (const auto& x : v) out.append(to_fraction(x));
  return out;
}

std::vector<Rational> rationals(const py::iterable& seq)
{
  std::vector<Rational> out;
  for (const auto& h : seq) out.push_back(to_rational(h));
  return out;
}

/// A is either a sequence (single hop, A[s]) or a mapping {(s, k): value}.
HamiltonianSpec make_spec(int q, const py::iterable& eps, const py::object& a, std::optional<int> s0,
                          std::optional<int> k0, const py::object& constant)
{
  std::map<std::pair<int, int>, Rational> entries;
  if (py::isinstance<py::dict>(a)) {
    for (const auto& [key, value] : a.cast<py::dict>()) {
      const auto sk = key.cast<std::pair<int, int>>();
      entries[sk] = to_rational(value);
    }
  } else if (!a.is_none()) {
    int s = 0;
    for (const auto& value : a.cast<py::iterable>()) entries[{s++, 1}] = to_rational(value);
  }
  int max_s = 0, max_k = 1;
  for (const auto& [sk, value] : entries) {
    if (sk.first < 0 || sk.second < 1) throw py::value_error("A keys need s >= 0 and k >= 1");
    max_s = std::max(max_s, sk.first);
    max_k = std::max(max_k, sk.second);
  }
  const CouplingShape shape{s0.value_or(max_s), k0.value_or(max_k)};
  if (max_s > shape.s0 || max_k > shape.k0) throw py::value_error("A has entries outside (s0, k0)");
  std::vector<Rational> flat(static_cast<std::size_t>(shape.unknowns()), Rational(0));
  for (const auto& [sk, value] : entries) flat[static_cast<std::size_t>(shape.index(sk.first, sk.second))] = value;
  return HamiltonianSpec(q, rationals(eps), shape, std::move(flat), to_rational(constant));
}

py::dict spectrum_dict(const SpectrumResult& r)
{
  py::dict d;
  d["eigenvalues"] = r.eigenvalues;
  d["vectors_monomial"] = r.vectors_monomial;
  d["vectors_fock"] = r.vectors_fock;
  d["residuals"] = r.residuals;
  d["residual_max"] = r.residual_max;
  return d;
}

py::dict report_dict(const MatchReport& r)
{
  py::list matched;
  for (const auto& m : r.matched) matched.append(py::make_tuple(m.qes, m.oracle, m.gap));
  py::dict d;
  d["matched"] = matched;
  d["unmatched"] = r.unmatched;
  d["tol"] = r.tol;
  d["ok"] = r.ok();
  return d;
}

ProductHamiltonian make_product(const py::iterable& terms, const SectorBasis& a, const SectorBasis& b)
{
  ProductHamiltonian ph{{}, a, b};
  for (const auto& t : terms) {
    const auto tup = t.cast<py::tuple>();
    if (tup.size() < 2 || tup.size() > 3) throw py::value_error("terms are (spec_a, spec_b[, weight])");
    ph.terms.push_back({tup[0].cast<HamiltonianSpec>(), tup[1].cast<HamiltonianSpec>(),
                        tup.size() == 3 ? to_rational(tup[2]) : Rational(1)});
  }
  return ph;
}

CutoffSystem joint_system(const CouplingShape& shape, const std::vector<SectorBasis>& sectors)
{
  if (sectors.empty()) throw py::value_error("need at least one sector");
  CutoffSystem sys = build_cutoff_system(shape, sectors.front());
  for (std::size_t i = 1; i < sectors.size(); ++i) sys = combine(sys, build_cutoff_system(shape, sectors[i]));
  return sys;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Quasi-exactly solvable sectors of anharmonic Bose Hamiltonians";

  static py::exception<InvariantSubspaceViolated> invariant_error(m, "InvariantSubspaceViolated", PyExc_ValueError);
  static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvariantSubspaceViolated& e) {
      py::set_error(invariant_error, e.what());
    } catch (const ConvergenceError& e) {
      py::set_error(convergence_error, e.what());
    } catch (const ConfigError& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  py::class_<SectorBasis>(m, "SectorBasis")
      .def(py::init([](int q, int r, int top) {
             SectorBasis s{q, r, top};
             check_sector(s);
             return s;
           }),
           py::arg("q"), py::arg("r"), py::arg("top"))
      .def_static("even", &SectorBasis::even, py::arg("top"))
      .def_static("odd", &SectorBasis::odd, py::arg("top"))
      .def_readonly("q", &SectorBasis::q)
      .def_readonly("r", &SectorBasis::r)
      .def_readonly("top", &SectorBasis::top)
      .def_property_readonly("dim", &SectorBasis::dim)
      .def("particles", &SectorBasis::particles, py::arg("n"))
      .def(py::self == py::self)
      .def("__repr__", [](const SectorBasis& s) {
        return "SectorBasis(q=" + std::to_string(s.q) + ", r=" + std::to_string(s.r) + ", top=" +
               std::to_string(s.top) + ")";
      });

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def(py::init(&make_spec), py::arg("q") = 2, py::arg("eps") = py::list(), py::arg("A") = py::none(),
           py::arg("s0") = py::none(), py::arg("k0") = py::none(), py::arg("constant") = 0,
           "A is a sequence A[s] for a single hop or a mapping {(s, k): value}.")
      .def_static("identity", [](int q, const py::object& c) { return HamiltonianSpec::identity(q, to_rational(c)); },
                  py::arg("q") = 2, py::arg("c") = 1)
      .def_static("from_json", [](const std::string& text) { return spec_from_json(json::parse(text)); })
      .def("to_json", [](const HamiltonianSpec& s) { return spec_to_json(s).dump(); })
      .def_property_readonly("q", &HamiltonianSpec::q)
      .def_property_readonly("p0", &HamiltonianSpec::p0)
      .def_property_readonly("s0", &HamiltonianSpec::s0)
      .def_property_readonly("k0", &HamiltonianSpec::k0)
      .def_property_readonly("eps", [](const HamiltonianSpec& s) { return fractions(s.eps_list()); })
      .def_property_readonly("couplings", [](const HamiltonianSpec& s) { return fractions(s.couplings()); })
      .def_property_readonly("constant", [](const HamiltonianSpec& s) { return to_fraction(s.constant()); })
      .def("coupling", [](const HamiltonianSpec& s, int si, int k) { return to_fraction(s.coupling(si, k)); },
           py::arg("s"), py::arg("k") = 1)
      .def(py::self == py::self)
      .def("__repr__", [](const HamiltonianSpec& s) { return "HamiltonianSpec(" + spec_to_json(s).dump() + ")"; });

  // hamiltonian-model
  m.def("gamma", py::overload_cast<const HamiltonianSpec&, const SectorBasis&, int>(&gamma), py::arg("spec"),
        py::arg("sector"), py::arg("n"));
  m.def("alpha", py::overload_cast<const HamiltonianSpec&, const SectorBasis&, int, int>(&alpha), py::arg("spec"),
        py::arg("sector"), py::arg("n"), py::arg("k") = 1);
  m.def("beta", py::overload_cast<const HamiltonianSpec&, const SectorBasis&, int, int>(&beta), py::arg("spec"),
        py::arg("sector"), py::arg("n"), py::arg("k") = 1);
  m.def("gamma_exact", [](const HamiltonianSpec& s, const SectorBasis& b, int n) { return to_fraction(gamma_exact(s, b, n)); },
        py::arg("spec"), py::arg("sector"), py::arg("n"));
  m.def("alpha_exact",
        [](const HamiltonianSpec& s, const SectorBasis& b, int n, int k) { return to_fraction(alpha_exact(s, b, n, k)); },
        py::arg("spec"), py::arg("sector"), py::arg("n"), py::arg("k") = 1);
  m.def("beta_exact",
        [](const HamiltonianSpec& s, const SectorBasis& b, int n, int k) { return to_fraction(beta_exact(s, b, n, k)); },
        py::arg("spec"), py::arg("sector"), py::arg("n"), py::arg("k") = 1);
  m.def("validate_ground_state", [](const HamiltonianSpec& s) {
    const auto v = validate_ground_state(s);
    return py::make_tuple(to_string(v.status), v.message);
  });
  m.def("fock_matrix_element", &fock_matrix_element, py::arg("spec"), py::arg("m"), py::arg("n"));

  // qes-conditions
  m.def("feasibility", [](int s0, int k0) {
    const auto f = feasibility({s0, k0});
    py::dict d;
    d["n1"] = f.n1;
    d["n2"] = f.n2;
    d["feasible"] = f.feasible;
    return d;
  }, py::arg("s0"), py::arg("k0"));
  m.def("cutoff_rows", [](int s0, int k0, const SectorBasis& sector) {
    py::list rows;
    for (const auto& r : build_cutoff_system({s0, k0}, sector).rows) {
      py::list entries;
      for (const auto& e : r.entries) entries.append(py::int_(py::str(e.str())));
      rows.append(py::make_tuple(r.k, r.depth, entries));
    }
    return rows;
  }, py::arg("s0"), py::arg("k0"), py::arg("sector"), "(k, depth, integer entries) per condition.");
  m.def("cutoff_nullspace", [](int s0, int k0, const std::vector<SectorBasis>& sectors) {
    py::list out;
    for (const auto& v : solve_cutoff_system(joint_system({s0, k0}, sectors))) out.append(fractions(v));
    return out;
  }, py::arg("s0"), py::arg("k0"), py::arg("sectors"));
  m.def("isolated_pair_nullspace", [](int s0, const SectorBasis& sector) {
    py::list out;
    for (const auto& v : solve_cutoff_system(isolated_pair_system(s0, sector))) out.append(fractions(v));
    return out;
  }, py::arg("s0"), py::arg("sector"));
  m.def("check_cutoff", &check_cutoff, py::arg("spec"), py::arg("sector"));
  m.def("two_level_relations", [](int L) {
    const auto r = two_level_relations(L);
    return py::make_tuple(to_fraction(r[0]), to_fraction(r[1]), to_fraction(r[2]));
  }, py::arg("L"));
  m.def("simultaneous_sector_check", [](const HamiltonianSpec& s, int L, int M) {
    const auto c = simultaneous_sector_check(s, L, M);
    py::dict d;
    d["even_ok"] = c.even_ok;
    d["odd_ok"] = c.odd_ok;
    d["sl2_expressible"] = c.sl2_expressible;
    return d;
  }, py::arg("spec"), py::arg("L"), py::arg("M"));

  // spectra
  m.def("subspace_matrix", [](const HamiltonianSpec& s, const SectorBasis& b) {
    return Eigen::MatrixXd(build_subspace_matrix(s, b).entries);
  }, py::arg("spec"), py::arg("sector"));
  m.def("symmetrized_matrix", [](const HamiltonianSpec& s, const SectorBasis& b) {
    return symmetrize(build_subspace_matrix(s, b));
  }, py::arg("spec"), py::arg("sector"));
  m.def("spectrum", [](const HamiltonianSpec& s, const SectorBasis& b, double tol) {
    return spectrum_dict(eigen_general(build_subspace_matrix(s, b), tol));
  }, py::arg("spec"), py::arg("sector"), py::arg("tol") = 1e-12);
  m.def("eigen_2x2", [](double ga, double gb, double product) {
    const auto r = eigen_2x2(ga, gb, product);
    if (r.complex_pair) throw py::value_error("negative discriminant: complex pair");
    return py::make_tuple(r.lower, r.upper);
  }, py::arg("gamma_a"), py::arg("gamma_b"), py::arg("offdiag_product"));
  m.def("eigen_cubic_h1", [](const HamiltonianSpec& s, double g1, double g2) {
    const auto r = eigen_cubic_h1(s, g1, g2);
    return py::make_tuple(r[0], r[1], r[2]);
  }, py::arg("spec"), py::arg("gamma1"), py::arg("gamma2"));
  m.def("max_dimension", &max_dimension);

  // oracle
  m.def("truncated_matrix", [](const HamiltonianSpec& s, int n_max) { return build_truncated(s, n_max).entries; },
        py::arg("spec"), py::arg("n_max"));
  m.def("jacobi_eigenvalues", [](const Eigen::MatrixXd& a) { return jacobi_eigenvalues(a); }, py::arg("matrix"));
  m.def("oracle_match", [](const HamiltonianSpec& s, const SectorBasis& b, std::optional<int> n_max, double tol) {
    const auto res = eigen_general(build_subspace_matrix(s, b));
    return report_dict(match_spectra(res, s, b, n_max.value_or(default_n_max(b)), tol));
  }, py::arg("spec"), py::arg("sector"), py::arg("n_max") = py::none(), py::arg("tol") = 1e-10);
  m.def("block_decoupling_check", &block_decoupling_check, py::arg("spec"), py::arg("sector"), py::arg("n_max"));
  m.def("default_n_max", &default_n_max, py::arg("sector"));

  // multimode
  m.def("product_spectrum", [](const py::iterable& terms, const SectorBasis& a, const SectorBasis& b, double tol) {
    return spectrum_dict(product_spectrum(make_product(terms, a, b), tol));
  }, py::arg("terms"), py::arg("sector_a"), py::arg("sector_b"), py::arg("tol") = 1e-12);
  m.def("product_oracle_match",
        [](const py::iterable& terms, const SectorBasis& a, const SectorBasis& b, std::optional<int> n_max_a,
           std::optional<int> n_max_b, double tol) {
          const auto ph = make_product(terms, a, b);
          const auto res = product_spectrum(ph);
          return report_dict(match_product_oracle(res, ph, n_max_a.value_or(default_n_max(a)),
                                                  n_max_b.value_or(default_n_max(b)), tol));
        },
        py::arg("terms"), py::arg("sector_a"), py::arg("sector_b"), py::arg("n_max_a") = py::none(),
        py::arg("n_max_b") = py::none(), py::arg("tol") = 1e-10);
}
