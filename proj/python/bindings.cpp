#include <pybind11/complex.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sczech/error.hpp"
#include "sczech/serialize.hpp"

namespace py = pybind11;
using namespace sczech;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

// Field plus its lattice invariants, built once.
class Field {
 public:
  explicit Field(i64 d_K) : inv_(lattice_invariants(make_field(d_K))) {}

  const FieldParams& params() const { return inv_.field; }
  const LatticeInvariants& inv() const { return inv_; }

  Convention conv(const std::string& name) {
    if (name != "auto") return convention_from_string(name);
    if (!selected_) selected_ = sweep_conventions(inv_).selected;
    return *selected_;
  }

 private:
  LatticeInvariants inv_;
  std::optional<Convention> selected_;
};

SL2Matrix to_matrix(const std::array<QuadInt, 4>& m) { return {m[0], m[1], m[2], m[3]}; }
std::array<QuadInt, 4> from_matrix(const SL2Matrix& m) { return {m.a, m.b, m.c, m.d}; }

}  // namespace

PYBIND11_MODULE(_sczech, m) {
  m.doc() = "Elliptic Dedekind sums, twisted Kloosterman sums and equidistribution experiments";

  static py::exception<Error> exc(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = exc;
      PyErr_SetObject(err.ptr(), py::make_tuple(std::string(e.what()), std::string(to_string(e.kind()))).ptr());
    }
  });

  py::class_<QuadInt>(m, "QuadInt")
      .def(py::init<i64, i64>(), py::arg("a"), py::arg("b") = 0)
      .def(py::init([](py::tuple t) {
        if (t.size() != 2) throw py::value_error("QuadInt needs (a, b)");
        return QuadInt{t[0].cast<i64>(), t[1].cast<i64>()};
      }))
      .def_readonly("a", &QuadInt::a)
      .def_readonly("b", &QuadInt::b)
      .def(py::self == py::self)
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(-py::self)
      .def("__hash__", [](const QuadInt& z) { return py::hash(py::make_tuple(z.a, z.b)); })
      .def("__iter__", [](const QuadInt& z) { return py::iter(py::make_tuple(z.a, z.b)); })
      .def("__repr__", [](const QuadInt& z) {
        return "QuadInt(" + std::to_string(z.a) + ", " + std::to_string(z.b) + ")";
      });
  py::implicitly_convertible<py::int_, QuadInt>();
  py::implicitly_convertible<py::tuple, QuadInt>();

  m.def("is_fundamental_discriminant", &is_fundamental_discriminant);
  m.def("classical_s", [](i64 c, i64 d) {
    const Rational s = classical_s(c, d);
    return py::module_::import("fractions").attr("Fraction")(s.numerator(), s.denominator());
  });
  m.def("star_discrepancy", [](std::vector<double> xs) { return star_discrepancy(std::move(xs)); });
  m.def("kronecker_symbol", &kronecker_symbol);

  py::class_<Field>(m, "Field")
      .def(py::init<i64>(), py::arg("d_K"))
      .def_property_readonly("d_K", [](const Field& f) { return f.params().d_K; })
      .def_property_readonly("omega", [](const Field& f) { return f.params().omega; })
      .def_property_readonly("area", [](const Field& f) { return f.params().area; })
      .def_property_readonly("units", [](const Field& f) { return f.params().units; })
      .def_property_readonly("degenerate", [](const Field& f) { return f.params().is_degenerate(); })
      .def_property_readonly("e2_0", [](const Field& f) { return E2_0(f.inv()); })
      .def_property_readonly("t", [](const Field& f) { return f.inv().t; })
      .def_property_readonly("zeta_K2", [](const Field& f) { return zeta_K(f.params()); })
      .def_property_readonly("humbert_volume", [](const Field& f) { return humbert_volume(f.params()); })
      .def("info", [](const Field& f) { return to_py(to_json_value(f.params())); })
      .def("dual_basis", [](const Field& f) {
        const auto b = dual_basis(f.params());
        return std::pair{b.m1, b.m2};
      })
      // ring arithmetic
      .def("mul", [](const Field& f, QuadInt x, QuadInt y) { return mul(x, y, f.params()); })
      .def("conj", [](const Field& f, QuadInt x) { return conj(x, f.params()); })
      .def("norm", [](const Field& f, QuadInt x) { return norm(x, f.params()); })
      .def("embed", [](const Field& f, QuadInt x) { return embed(x, f.params()); })
      .def("is_unimodular", [](const Field& f, QuadInt c, QuadInt d) { return is_unimodular(c, d, f.params()); })
      .def("bezout", [](const Field& f, QuadInt c, QuadInt d) { return from_matrix(bezout_sl2(c, d, f.params())); })
      .def("residues", [](const Field& f, QuadInt c) { return residues_mod(c, f.params()); })
      .def("coprime_residues", [](const Field& f, QuadInt c) { return coprime_residues(c, f.params()); })
      .def("euler_phi", [](const Field& f, QuadInt c) { return euler_phi_K(c, f.params()); })
      .def("enumerate_by_norm", [](const Field& f, double X) { return enumerate_by_norm(X, f.params()); })
      // Eisenstein-Kronecker values and Dedekind sums
      .def("E1", [](const Field& f, cplx z) { return E1(z, f.inv()); })
      .def("E1_torsion", [](const Field& f, QuadInt r, QuadInt c) {
        return E1(torsion_point(r, c, f.params()), f.inv());
      })
      .def("weierstrass_zeta", [](const Field& f, cplx z) { return weierstrass_zeta(z, f.inv()); })
      .def("D", [](const Field& f, QuadInt c, QuadInt d) { return elliptic_D(c, d, f.inv()); })
      .def("d_tilde", [](const Field& f, QuadInt c, QuadInt d) { return d_tilde(c, d, f.inv()); })
      .def("phi", [](const Field& f, const std::array<QuadInt, 4>& mat) { return phi(to_matrix(mat), f.inv()).value; })
      .def("phi_tilde", [](const Field& f, const std::array<QuadInt, 4>& mat) { return phi_tilde(to_matrix(mat), f.inv()); })
      .def("phi_tilde_distribution",
           [](const Field& f, i64 max_norm) { return to_py(to_json_value(phi_tilde_distribution(max_norm, f.inv()))); },
           py::arg("max_norm") = 50)
      // Kloosterman sums
      .def("s_infinity",
           [](Field& f, cplx mm, cplx n, QuadInt c, cplx alpha, const std::string& conv) {
             return s_infinity(mm, n, c, alpha, f.inv(), f.conv(conv));
           },
           py::arg("m"), py::arg("n"), py::arg("c"), py::arg("alpha") = cplx{}, py::arg("convention") = "auto")
      .def("identity_check",
           [](Field& f, QuadInt c, double r, const std::string& conv) {
             return to_py(to_json_value(identity_check(c, r, f.inv(), f.conv(conv))));
           },
           py::arg("c"), py::arg("r"), py::arg("convention") = "auto")
      .def("sweep_conventions", [](const Field& f, i64 max_norm) { return to_py(to_json_value(sweep_conventions(f.inv(), max_norm))); },
           py::arg("max_norm") = 10)
      .def("theorem2_probe",
           [](Field& f, cplx mm, cplx n, cplx alpha, std::vector<double> grid, const std::string& conv, unsigned jobs) {
             return to_py(to_json_value(theorem2_probe(mm, n, alpha, grid, f.inv(), f.conv(conv), jobs)));
           },
           py::arg("m"), py::arg("n"), py::arg("alpha"), py::arg("x_grid"), py::arg("convention") = "auto",
           py::arg("jobs") = 1)
      // experiments
      .def("coset_count", [](const Field& f, double X, unsigned jobs) { return to_py(to_json_value(coset_count(X, f.params(), jobs))); },
           py::arg("X"), py::arg("jobs") = 1)
      .def("weyl_sum",
           [](const Field& f, double X, double r, int n, unsigned jobs) {
             return to_py(to_json_value(weyl_sum(X, r, n, f.inv(), jobs)));
           },
           py::arg("X"), py::arg("r"), py::arg("n") = 1, py::arg("jobs") = 1)
      .def("equidist",
           [](const Field& f, std::vector<double> grid, double r, int modes, std::size_t bins, unsigned jobs) {
             const auto rep = equidist_experiment(grid, r, modes, bins, f.inv(), jobs);
             json out = json::array();
             for (const auto& p : rep.points) out.push_back(to_json_value(p));
             return to_py(out);
           },
           py::arg("x_grid"), py::arg("r"), py::arg("modes") = 3, py::arg("bins") = 32, py::arg("jobs") = 1)
      .def("d_tilde_values", [](const Field& f, double X) { return d_tilde_values(X, f.inv()); });
}
