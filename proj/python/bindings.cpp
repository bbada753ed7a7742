#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "paraidem/catalog.hpp"
#include "paraidem/pipeline.hpp"

namespace py = pybind11;
using namespace paraidem;
using nlohmann::json;

namespace {

// JSON crosses the boundary as text, decoded by the stdlib json module.
py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
json from_py(const py::object& o) {
  if (py::isinstance<py::str>(o)) return json::parse(o.cast<std::string>());
  return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Ring ring_of(const std::string& s) { return parse_ring(json(s)); }

GroupTable group_for(const std::string& family, std::size_t order) {
  if (family == "cyclic") return GroupTable::cyclic(order);
  if (family == "dihedral") return GroupTable::dihedral(order);
  if (family == "s3") return GroupTable::symmetric_3();
  if (family == "elementary_abelian_2") {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < order) ++k;
    if ((std::size_t{1} << k) != order) throw Error(ErrorCode::InvalidGroup, "C2^k needs a power-of-two order");
    return GroupTable::elementary_abelian_2(k);
  }
  throw Error(ErrorCode::InvalidGroup, "unknown family '" + family + "'");
}

std::vector<LaurentPoly> polys(const Ring& r, const std::vector<std::string>& s) {
  std::vector<LaurentPoly> out;
  for (const auto& x : s) out.push_back(LaurentPoly::parse(r, x));
  return out;
}

Assignment assignment(const Ring& r, const std::map<std::string, std::string>& values) {
  Assignment a;
  for (const auto& [var, v] : values) a.set(var, LaurentPoly::parse(r, v));
  return a;
}

}  // namespace

PYBIND11_MODULE(_paraidem, m) {
  m.doc() = "exact paraunitary constructions from complete orthogonal sets of idempotents";

  // module lifetime; never released
  static PyObject* error_type = PyErr_NewException("paraidem.ParaidemError", PyExc_ValueError, nullptr);
  m.attr("ParaidemError") = py::handle(error_type);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<PolyMatrix>(m, "Matrix")
      .def_static("parse", [](const std::string& ring, const std::vector<std::vector<std::string>>& rows) {
        return PolyMatrix::parse(ring_of(ring), rows);
      }, py::arg("ring"), py::arg("rows"))
      .def_static("identity", [](const std::string& ring, std::size_t n) { return PolyMatrix::identity(ring_of(ring), n); })
      .def_static("from_json", [](const py::object& o) { return PolyMatrix::from_json(from_py(o)); })
      .def_property_readonly("shape", [](const PolyMatrix& a) { return py::make_tuple(a.rows(), a.cols()); })
      .def_property_readonly("ring", [](const PolyMatrix& a) { return a.ring().to_string(); })
      .def("entries", &PolyMatrix::entry_strings)
      .def("to_json", [](const PolyMatrix& a) { return to_py(a.to_json()); })
      .def("adjoint", [](const PolyMatrix& a) { return adjoint(a); })
      .def("transpose", &PolyMatrix::transpose)
      .def("scale", [](const PolyMatrix& a, const std::string& f) { return a * LaurentPoly::parse(a.ring(), f); })
      .def(py::self + py::self)
      .def(py::self - py::self)
      .def(py::self * py::self)
      .def(py::self == py::self)
      .def("__str__", &PolyMatrix::to_string)
      .def("__repr__", [](const PolyMatrix& a) { return "<Matrix " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " over " + a.ring().to_string() + ">"; });

  py::class_<IdempotentSet>(m, "IdempotentSet")
      .def_readonly("members", &IdempotentSet::members)
      .def_readonly("labels", &IdempotentSet::labels)
      .def_readonly("n", &IdempotentSet::n)
      .def("__len__", &IdempotentSet::size)
      .def("verify", [](const IdempotentSet& s) { return verify_set(s).ok; })
      .def("ranks", [](const IdempotentSet& s) { return rank_profile(s); })
      .def("merge", [](const IdempotentSet& s, const Partition& groups) {
        Partition zero_based = groups;
        for (auto& g : zero_based) for (auto& i : g) --i;
        return merge(s, zero_based);
      }, py::arg("groups"), "merge members; groups use 1-based indices")
      .def("to_json", [](const IdempotentSet& s) { return to_py(s.to_json()); });

  m.def("group_set", [](const std::string& family, std::size_t order, const std::string& ring, bool real) {
    return group_set(group_for(family, family == "s3" ? 6 : order), ring_of(ring), real);
  }, py::arg("family"), py::arg("order") = 0, py::arg("ring") = "rational", py::arg("real") = false);
  m.def("basis_set", [](const PolyMatrix& rows, const std::string& method) {
    if (method == "orthogonal") return from_orthogonal_basis(rows);
    if (method == "orthonormal") return from_orthonormal_basis(rows);
    throw Error(ErrorCode::ParseError, "method is orthonormal or orthogonal");
  }, py::arg("rows"), py::arg("method") = "orthonormal");
  m.def("diagonal_set", [](const std::string& ring, std::size_t n) { return diagonal_set(ring_of(ring), n); });
  m.def("rows_set", &from_matrix_rows);

  m.def("monomial_sum", [](const IdempotentSet& s, const std::vector<std::string>& w) { return monomial_sum(s, polys(s.ring, w)); });
  m.def("linear_combination", [](const IdempotentSet& s, const std::vector<std::string>& w) { return linear_combination(polys(s.ring, w), s); });
  m.def("tangle", [](const PolyMatrix& a, const PolyMatrix& b, const std::string& variant) {
    return tangle(a, b, variant.empty() ? TangleVariant{} : TangleVariant::parse(variant));
  }, py::arg("a"), py::arg("b"), py::arg("variant") = "");
  m.def("tangle_variants", [] {
    std::vector<std::string> out;
    for (const auto& v : TangleVariant::all()) out.push_back(v.to_string());
    return out;
  });
  m.def("specialize_hadamard", [](const PolyMatrix& w, const std::map<std::string, std::string>& values) {
    return to_py(specialize_hadamard(w, assignment(w.ring(), values)).to_json());
  });
  m.def("substitute", [](const PolyMatrix& w, const std::map<std::string, std::string>& values) { return substitute(w, assignment(w.ring(), values)); });

  m.def("is_paraunitary", [](const PolyMatrix& a) { return is_paraunitary(a).ok; });
  m.def("pseudo_multiple", [](const PolyMatrix& a) -> std::optional<std::string> {
    const auto p = is_pseudo_paraunitary(a);
    if (!p) return std::nullopt;
    return p->to_string();
  }, "the monomial p with W W^* = p I, or None");
  m.def("determinant", [](const PolyMatrix& a) { return determinant(a).to_string(); });
  m.def("rank", [](const PolyMatrix& a) { return rank(a); });

  m.def("run_pipeline", [](const py::object& p) { return to_py(run_pipeline(from_py(p)).to_json()); });
  m.def("catalog_ids", [] {
    std::vector<std::string> out;
    for (const auto& e : catalog()) out.push_back(e.id);
    return out;
  });
  m.def("run_catalog", [](const std::vector<std::string>& ids) {
    py::list out;
    std::vector<EntryOutcome> res;
    {
      py::gil_scoped_release release;
      res = run_catalog(ids);
    }
    for (const auto& o : res) out.append(to_py(o.to_json()));
    return out;
  }, py::arg("ids") = std::vector<std::string>{});
}
