#include <cmath>
#include <limits>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "majo/diagnostics.hpp"
#include "majo/error.hpp"
#include "majo/majorization.hpp"
#include "majo/operators.hpp"

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction; ints and "p/q"
// strings are accepted on the way in.
namespace pybind11::detail {

template <>
struct type_caster<majo::Rational> {
  PYBIND11_TYPE_CASTER(majo::Rational, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (!src) return false;
    try {
      if (py::isinstance<py::str>(src)) {
        value = majo::parse_rational(src.cast<std::string>());
        return true;
      }
      py::object frac = py::module_::import("fractions").attr("Fraction")(src);
      std::string num = py::str(frac.attr("numerator"));
      std::string den = py::str(frac.attr("denominator"));
      value = majo::Rational(majo::Integer(num), majo::Integer(den));
      return true;
    } catch (const std::exception&) {
      PyErr_Clear();
      return false;
    }
  }

  static handle cast(const majo::Rational& r, return_value_policy, handle) {
    py::object fraction = py::module_::import("fractions").attr("Fraction");
    py::object num = py::int_(py::str(numerator(r).str()));
    py::object den = py::int_(py::str(denominator(r).str()));
    return fraction(num, den).release();
  }
};

template <>
struct type_caster<majo::ExtendedReal> {
  PYBIND11_TYPE_CASTER(majo::ExtendedReal, const_name("fractions.Fraction | float"));

  bool load(handle src, bool convert) {
    if (src.is_none()) return false;
    if (py::isinstance<py::float_>(src) && std::isinf(src.cast<double>()) && src.cast<double>() > 0) {
      value = majo::ExtendedReal::infinity();
      return true;
    }
    if (py::isinstance<py::str>(src) && src.cast<std::string>() == "inf") {
      value = majo::ExtendedReal::infinity();
      return true;
    }
    type_caster<majo::Rational> inner;
    if (!inner.load(src, convert)) return false;
    value = majo::ExtendedReal(static_cast<majo::Rational&>(inner));
    return true;
  }

  static handle cast(const majo::ExtendedReal& x, return_value_policy policy, handle parent) {
    if (x.is_infinite()) return py::float_(std::numeric_limits<double>::infinity()).release();
    return type_caster<majo::Rational>::cast(x.value(), policy, parent);
  }
};

}  // namespace pybind11::detail

namespace {

using Pieces = std::vector<std::pair<majo::Rational, majo::Rational>>;

majo::StepFunction make_step(const Pieces& pieces, const majo::ExtendedReal& total) {
  std::vector<majo::Piece> raw;
  raw.reserve(pieces.size());
  for (const auto& [v, m] : pieces) raw.push_back({v, m});
  return majo::StepFunction::canonicalize(raw, total);
}

Pieces pieces_of(const majo::StepFunction& f) {
  Pieces out;
  for (const auto& p : f.pieces()) out.emplace_back(p.value, p.mass);
  return out;
}

majo::OperatorMatrix to_matrix(const std::vector<std::vector<majo::Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<majo::Rational> entries;
  for (const auto& r : rows) {
    if (r.size() != cols) throw majo::Error(majo::ErrorCode::DimensionMismatch, "ragged matrix");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return majo::OperatorMatrix(rows.size(), cols, std::move(entries));
}

std::vector<std::vector<majo::Rational>> from_matrix(const majo::OperatorMatrix& m) {
  std::vector<std::vector<majo::Rational>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j));
  return out;
}

py::dict verdict_dict(const majo::MajorizationVerdict& v) {
  py::dict d;
  d["holds"] = v.holds;
  d["criterion"] = std::string(majo::to_string(v.criterion));
  if (v.witness) {
    py::dict c;
    c["kind"] = v.witness->kind == majo::FailureKind::Exceeds ? "exceeds" : "integral-mismatch";
    c["point"] = v.witness->at.point;
    c["lhs"] = v.witness->at.lhs;
    c["rhs"] = v.witness->at.rhs;
    d["certificate"] = c;
  } else {
    d["certificate"] = py::none();
  }
  return d;
}

majo::Relation relation_of(bool weak) { return weak ? majo::Relation::Weak : majo::Relation::Strong; }

}  // namespace

PYBIND11_MODULE(_majo, m) {
  m.doc() = "Exact majorization checks and stochastic-operator witnesses";

  static py::exception<majo::Error> error(m, "MajoError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const majo::Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<majo::StepFunction>(m, "StepFunction")
      .def(py::init(&make_step), py::arg("pieces"), py::arg("total"))
      .def_property_readonly("pieces", &pieces_of)
      .def_property_readonly("total", [](const majo::StepFunction& f) { return f.total_measure(); })
      .def("__eq__", [](const majo::StepFunction& a, const majo::StepFunction& b) { return a == b; })
      .def("__repr__", [](const majo::StepFunction& f) {
        std::string s = "StepFunction([";
        for (std::size_t i = 0; i < f.pieces().size(); ++i) {
          if (i) s += ", ";
          s += "(" + majo::to_string(f.pieces()[i].value) + ", " + majo::to_string(f.pieces()[i].mass) + ")";
        }
        return s + "], total=" + f.total_measure().str() + ")";
      });

  m.def("integral", &majo::integral);
  m.def("distribution", &majo::distribution, py::arg("f"), py::arg("t"));
  m.def("rearrangement", &majo::rearrangement);
  m.def("partial_integral", &majo::partial_integral, py::arg("f"), py::arg("s"));
  m.def("hinge_integral", &majo::hinge_integral, py::arg("f"), py::arg("u"));
  m.def("ess_sup", &majo::ess_sup);

  m.def("majorize", [](const majo::StepFunction& f, const majo::StepFunction& g) {
    return verdict_dict(majo::majorize(f, g));
  });
  m.def("weak_majorize", [](const majo::StepFunction& f, const majo::StepFunction& g) {
    return verdict_dict(majo::weak_majorize(f, g));
  });
  m.def(
      "cross_check",
      [](const majo::StepFunction& f, const majo::StepFunction& g, bool weak) {
        auto r = majo::cross_check(f, g, relation_of(weak));
        py::dict d;
        d["consistent"] = r.consistent;
        d["holds"] = r.holds;
        py::list verdicts;
        for (const auto& v : r.verdicts) verdicts.append(verdict_dict(v));
        d["verdicts"] = verdicts;
        return d;
      },
      py::arg("f"), py::arg("g"), py::arg("weak") = false);

  m.def("classify_matrix", [](const std::vector<std::vector<majo::Rational>>& d) {
    return std::string(majo::to_string(majo::classify_matrix(to_matrix(d))));
  });
  m.def("apply_matrix", [](const std::vector<std::vector<majo::Rational>>& d, const std::vector<majo::Rational>& v) {
    return majo::apply_matrix(to_matrix(d), v);
  });
  m.def(
      "lift",
      [](const std::vector<majo::Rational>& masses, const std::vector<std::vector<majo::Rational>>& d) {
        return from_matrix(majo::lift(majo::Partition(masses), to_matrix(d)).values);
      },
      py::arg("masses"), py::arg("d"));

  m.def("ds_witness", [](const majo::StepFunction& f, const majo::StepFunction& g) {
    majo::WitnessChain w = majo::ds_witness(f, g);
    py::dict d;
    py::list steps;
    for (const auto& t : w.steps) steps.append(py::make_tuple(t.j, t.k, t.lambda));
    d["steps"] = steps;
    d["product"] = from_matrix(w.product);
    d["atom_masses"] = w.source_partition.masses();
    d["source"] = w.source_values;
    d["target"] = w.target_values;
    return d;
  });

  m.def("small_set_modulus", &majo::small_set_modulus, py::arg("h"), py::arg("delta"));
  m.def("l1_distance", py::overload_cast<const majo::StepFunction&, const majo::StepFunction&>(&majo::l1_distance));
}
