#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "kvol/content.hpp"
#include "kvol/exterior.hpp"
#include "kvol/geometry.hpp"
#include "kvol/io.hpp"
#include "kvol/verify.hpp"

namespace py = pybind11;
using namespace kvol;

namespace {

// Exact entries cross the boundary as strings ("p/q"), ints, or anything
// whose str() parses as one (fractions.Fraction does). Floats are refused:
// that is what FloatMatrix is for.
Rational rational_from_py(py::handle h) {
  if (py::isinstance<py::float_>(h)) {
    throw py::type_error(
        "exact entries take int, 'p/q' strings, or Fraction; use FloatMatrix "
        "for binary64 data");
  }
  return parse_rational(py::cast<std::string>(py::str(h)));
}

template <ScalarType T>
Matrix<T> matrix_from_rows(const std::vector<std::vector<py::object>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int k = n == 0 ? 0 : static_cast<int>(rows.front().size());
  std::vector<T> entries;
  entries.reserve(static_cast<std::size_t>(n) * k);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != k) {
      throw py::value_error("all rows must have the same length");
    }
    for (const auto& item : row) {
      if constexpr (std::same_as<T, Rational>) {
        entries.push_back(rational_from_py(item));
      } else {
        entries.push_back(py::cast<double>(item));
      }
    }
  }
  return Matrix<T>(n, k, std::move(entries));
}

py::object scalar_to_py(const Rational& x) {
  return py::str(format_scalar(x));
}
py::object scalar_to_py(double x) { return py::float_(x); }

template <ScalarType T>
py::list matrix_to_lists(const Matrix<T>& m) {
  py::list rows;
  for (int i = 0; i < m.rows(); ++i) {
    py::list row;
    for (int j = 0; j < m.cols(); ++j) row.append(scalar_to_py(m(i, j)));
    rows.append(row);
  }
  return rows;
}

py::tuple subset_to_py(const SubsetIndex& s) {
  py::tuple t(s.size());
  for (int i = 0; i < s.size(); ++i) t[i] = s.elements()[i];
  return t;
}

SubsetIndex subset_from_py(const std::vector<int>& elements, int ambient) {
  return SubsetIndex(elements, ambient);
}

template <ScalarType T>
py::dict report_to_py(const ContentReport<T>& r, Mode mode) {
  py::dict d;
  d["mode"] = mode_name(mode);
  d["gram_det"] = scalar_to_py(r.gram_det);
  d["minor_sq_sum"] = scalar_to_py(r.minor_sq_sum);
  d["residual"] = scalar_to_py(r.residual);
  d["content"] = r.content;
  py::list minors;
  for (const auto& [subset, value] : r.minors) {
    minors.append(py::make_tuple(subset_to_py(subset), scalar_to_py(value)));
  }
  d["minors"] = minors;
  return d;
}

template <ScalarType T>
py::dict content_to_py(const ContentResult<T>& r) {
  py::dict d;
  d["content"] = r.content;
  d["content_sq"] = scalar_to_py(r.content_sq);
  d["rank"] = r.rank;
  d["degenerate_rank_zero"] = r.degenerate_rank_zero;
  return d;
}

template <ScalarType T>
void bind_matrix_ops(py::module_& m, const char* class_name) {
  using M = Matrix<T>;
  py::class_<M>(m, class_name)
      .def(py::init([](const std::vector<std::vector<py::object>>& rows) {
             return matrix_from_rows<T>(rows);
           }),
           py::arg("rows"))
      .def_property_readonly("rows", &M::rows)
      .def_property_readonly("cols", &M::cols)
      .def_property_readonly(
          "mode", [](const M& self) { return mode_name(self.mode()); })
      .def("entry",
           [](const M& self, int i, int j) {
             if (i < 0 || i >= self.rows() || j < 0 || j >= self.cols()) {
               throw py::index_error("matrix index out of range");
             }
             return scalar_to_py(self(i, j));
           })
      .def("to_lists", [](const M& self) { return matrix_to_lists(self); })
      .def("__eq__", [](const M& a, const M& b) { return a == b; })
      .def("__repr__", [=](const M& self) {
        std::ostringstream os;
        os << class_name << " " << self.rows() << "x" << self.cols() << "\n"
           << format_matrix(self);
        return os.str();
      });

  m.def("transpose", [](const M& a) { return transpose(a); });
  m.def("mat_mul", [](const M& a, const M& b) { return mat_mul(a, b); });
  m.def("determinant",
        [](const M& a) { return scalar_to_py(determinant(a)); });
  m.def("gram", [](const M& a) { return gram(a).matrix(); });
  m.def("minor_det", [](const M& a, const std::vector<int>& rows,
                        const std::vector<int>& cols) {
    return scalar_to_py(minor_det(a, subset_from_py(rows, a.rows()),
                                  subset_from_py(cols, a.cols())));
  });
  m.def("rank", [](const M& a) { return rank_of(a); });
  m.def("compound", [](const M& a, int grade) {
    return compound(a, grade).entries;
  }, py::arg("matrix"), py::arg("grade"));
  m.def("wedge", [](const M& columns) {
    const auto w = wedge(columns);
    py::list out;
    const auto sets = k_subsets(w.ambient(), w.grade());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      out.append(py::make_tuple(subset_to_py(sets[i]),
                                scalar_to_py(w.coords()[i])));
    }
    return out;
  });
  m.def("pythagorean_check", [](const M& a) {
    return report_to_py(pythagorean_check(a), a.mode());
  });
  m.def("content", [](const M& a) { return content_to_py(content(a)); });
  m.def("projection_contents", [](const M& a) {
    py::list out;
    for (const auto& e : projection_contents(a)) {
      py::dict d;
      d["subset"] = subset_to_py(e.subset);
      d["value"] = scalar_to_py(e.minor);
      d["abs"] = scalar_to_py(e.abs_content);
      out.append(d);
    }
    return out;
  });
  m.def("multiplicativity_check", [](const M& l, const M& e) {
    const auto r = multiplicativity_check(l, e);
    py::dict d;
    d["composed_content"] = r.composed_content;
    d["product_of_contents"] = r.product_of_contents;
    d["relative_gap"] = r.relative_gap;
    return d;
  });
  m.def("adjoint_content_check", [](const M& a) {
    const auto r = adjoint_content_check(a);
    return py::make_tuple(r.content, r.adjoint_content);
  });
  m.def("simplex_content", [](const M& vertices) {
    return simplex_content(Simplex<T>(vertices));
  });
  m.def("simplex_content_sq", [](const M& vertices) {
    return scalar_to_py(simplex_content_sq(Simplex<T>(vertices)));
  });
}

}  // namespace

PYBIND11_MODULE(_kvol, m) {
  m.doc() = "Exact and floating-point k-dimensional content, compound "
            "matrices, and Gram-determinant identities";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  // int(str) round-trip keeps arbitrary precision
  m.def("binomial", [](int n, int k) {
    py::object pyint = py::module_::import("builtins").attr("int");
    return pyint(binomial(n, k).str());
  }, py::arg("n"), py::arg("k"));

  m.def("k_subsets", [](int n, int k) {
    py::list out;
    for (const auto& s : k_subsets(n, k)) out.append(subset_to_py(s));
    return out;
  }, py::arg("n"), py::arg("k"));

  m.def("subset_rank", [](const std::vector<int>& elements, int n) {
    return SubsetIndex(elements, n).rank();
  }, py::arg("elements"), py::arg("n"));

  m.def("unrank", [](int n, int k, std::uint64_t r) {
    return subset_to_py(unrank(n, k, r));
  }, py::arg("n"), py::arg("k"), py::arg("rank"));

  bind_matrix_ops<Rational>(m, "ExactMatrix");
  bind_matrix_ops<double>(m, "FloatMatrix");

  m.def("parse_matrix", [](const std::string& text,
                           const std::optional<std::string>& mode) {
    std::optional<Mode> forced;
    if (mode) {
      if (*mode == "exact") forced = Mode::exact;
      else if (*mode == "float") forced = Mode::floating;
      else throw py::value_error("mode must be 'exact' or 'float'");
    }
    const AnyMatrix parsed = parse_matrix(text, forced);
    return std::visit([](const auto& m) { return py::cast(m); }, parsed);
  }, py::arg("text"), py::arg("mode") = py::none());

  m.def("de_gua_check", [](double a, double b, double c) {
    const auto r = de_gua_check(a, b, c);
    py::dict d;
    d["leg_sq_sum"] = r.leg_sq_sum;
    d["hyp_sq"] = r.hyp_sq;
    d["relative_residual"] = r.relative_residual;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("c"));

  m.def("measure", [](const std::string& shape_spec, int resolution) {
    Shape shape = make_shape(shape_spec);
    shape.spec.resolution.assign(
        static_cast<std::size_t>(shape.spec.param_dim), resolution);
    const double value = immersion_content(shape.spec);
    py::dict d;
    d["content"] = value;
    d["analytic"] = shape.closed_form ? py::object(py::float_(*shape.closed_form))
                                      : py::object(py::none());
    return d;
  }, py::arg("shape"), py::arg("resolution") = 256);

  m.def("verify", [](const std::string& suite, int trials,
                     std::uint64_t seed) {
    const auto r = run_suite(suite, trials, seed);
    py::dict d;
    d["suite"] = r.suite;
    d["trials"] = r.trials;
    d["seed"] = r.seed;
    d["failures"] = r.failures;
    d["first_failure"] = r.first_failure;
    d["ok"] = r.ok();
    return d;
  }, py::arg("suite"), py::arg("trials") = 100, py::arg("seed") = 0);
}
