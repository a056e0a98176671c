#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfcount/config.hpp"
#include "nfcount/error.hpp"

namespace py = pybind11;
using namespace nfc;

namespace {

py::object pyint(const Integer& v) { return py::module_::import("builtins").attr("int")(v.get_str()); }

Integer to_integer(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

Rational to_rational_value(const py::handle& h) { return parse_rational(py::str(h).cast<std::string>()); }

std::vector<IntVector> to_vectors(const py::iterable& rows) {
  std::vector<IntVector> out;
  for (auto row : rows) {
    IntVector v;
    for (auto c : py::reinterpret_borrow<py::iterable>(row)) v.push_back(to_integer(c));
    out.push_back(std::move(v));
  }
  return out;
}

py::list from_vectors(const std::vector<IntVector>& vs) {
  py::list out;
  for (const auto& v : vs) {
    py::list row;
    for (const auto& c : v) row.append(pyint(c));
    out.append(row);
  }
  return out;
}

// A field with its prime data and optional Galois action.
struct Field {
  FieldEntry entry;

  Field(const std::string& poly, std::optional<std::string> basis, std::optional<std::string> galois,
        long ceiling) {
    FieldSpec spec;
    spec.poly = parse_polynomial(poly);
    spec.label = to_string(spec.poly);
    if (basis) spec.basis = parse_basis(*basis, spec.poly.degree());
    spec.galois = galois;
    FieldPtr k = make_field(spec.poly, spec.basis, spec.label, ceiling);
    if (galois) build_action(*k, parse_galois_source(*galois));
    entry = load_field(spec, ceiling);
    if (entry.error) throw InputError(*entry.error);
  }

  IdealLattice ideal(const std::optional<py::iterable>& gens) const {
    if (!gens) return IdealLattice::unit(entry.field);
    return IdealLattice::from_generators(entry.field, to_vectors(*gens));
  }

  Integer tame() const { return tame_discriminant(*entry.primes).value; }
};

BoxBody box_from(const Field& f, const py::object& radii) {
  const std::size_t d = f.entry.field->degree();
  if (py::isinstance<py::iterable>(radii) && !py::isinstance<py::str>(radii)) {
    BoxBody b;
    for (auto r : py::reinterpret_borrow<py::iterable>(radii)) b.radii.push_back(to_rational_value(r));
    return b;
  }
  return BoxBody::uniform(d, to_rational_value(radii));
}

py::dict divisibility(const DivisibilityReport& r) {
  py::dict out;
  out["product"] = pyint(r.product.value);
  out["divisor"] = pyint(r.required_divisor);
  out["general_divisor"] = r.general_divisor ? pyint(*r.general_divisor) : py::object(py::none());
  out["two_homogeneous"] = r.two_homogeneous;
  out["pass"] = r.pass;
  out["zero"] = r.zero_flag;
  out["uncertified_group"] = r.uncertified_group_flag;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified lattice-point counting in number fields";

  auto input_error = py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CertificationError>(m, "CertificationError", PyExc_RuntimeError);
  py::register_exception<InternalInconsistency>(m, "InternalInconsistency", PyExc_RuntimeError);
  py::register_exception<PrimeDataUnavailable>(m, "PrimeDataUnavailable", PyExc_RuntimeError);
  (void)input_error;

  py::class_<Field>(m, "Field")
      .def(py::init<const std::string&, std::optional<std::string>, std::optional<std::string>, long>(),
           py::arg("poly"), py::arg("basis") = py::none(), py::arg("galois") = py::none(),
           py::arg("precision_ceiling") = 8192)
      .def_property_readonly("label", [](const Field& f) { return f.entry.spec.label; })
      .def_property_readonly("degree", [](const Field& f) { return f.entry.field->degree(); })
      .def_property_readonly("signature",
                             [](const Field& f) { return py::make_tuple(f.entry.field->r1(), f.entry.field->r2()); })
      .def_property_readonly("discriminant", [](const Field& f) { return pyint(f.entry.field->discriminant()); })
      .def_property_readonly("tame_discriminant", [](const Field& f) { return pyint(f.tame()); })
      .def_property_readonly("index", [](const Field& f) { return pyint(f.entry.field->index()); })
      .def_property_readonly("basis",
                             [](const Field& f) {
                               // Columns as strings of rationals; the Python layer makes Fractions.
                               const RatMatrix& b = f.entry.field->basis();
                               py::list cols;
                               for (std::size_t j = 0; j < b.cols(); ++j) {
                                 py::list col;
                                 for (std::size_t i = 0; i < b.rows(); ++i) col.append(to_string(b(i, j)));
                                 cols.append(col);
                               }
                               return cols;
                             })
      .def("ramified_primes",
           [](Field& f) {
             py::list out;
             for (const auto& [p, exp] : tame_discriminant(*f.entry.primes).exponents) {
               py::list factors;
               for (const auto& q : f.entry.primes->get(p)->factors) factors.append(py::make_tuple(q.e, q.f));
               out.append(py::make_tuple(pyint(p), exp, factors));
             }
             return out;
           })
      .def("ideal_index",
           [](const Field& f, py::iterable gens) { return pyint(f.ideal(gens).index()); })
      .def(
          "count",
          [](const Field& f, py::object radii, std::optional<py::iterable> gens) {
            LatticeGeometry g(f.ideal(gens));
            BoxBody box = box_from(f, radii);
            CountingReport r = verify_counting(g, box);
            py::dict out;
            out["count"] = r.count;
            out["rank"] = r.rank;
            out["points"] = from_vectors(g.count_box(box).points);
            out["lower_bound"] = r.lower_bound.mid();
            out["upper_bound"] = r.upper_bound ? py::object(py::float_(r.upper_bound->mid())) : py::object(py::none());
            out["pass"] = r.pass;
            return out;
          },
          py::arg("radii"), py::arg("gens") = py::none())
      .def(
          "minima",
          [](const Field& f, std::optional<py::iterable> gens) {
            MinimaReport r = verify_minima(f.ideal(gens), f.entry.action ? &*f.entry.action : nullptr);
            py::dict out;
            py::list lambdas;
            for (const auto& l : r.minima.lambdas) lambdas.append(l.mid());
            out["lambdas"] = lambdas;
            out["witnesses"] = from_vectors(r.minima.witnesses);
            out["pass"] = r.pass;
            py::dict ratios;
            for (const auto& q : r.ratios) ratios[py::str(q.name + "/" + std::to_string(q.m))] = q.value;
            out["ratios"] = ratios;
            return out;
          },
          py::arg("gens") = py::none())
      .def(
          "galois",
          [](const Field& f) {
            if (!f.entry.action) throw InputError("field has no Galois source");
            const GaloisAction& a = *f.entry.action;
            py::dict out;
            out["order"] = a.order();
            out["provenance"] = to_string(a.provenance());
            out["certified"] = a.certified();
            out["two_homogeneous"] = a.is_two_homogeneous();
            py::list gens;
            for (const auto& p : a.generators()) {
              py::list g;
              for (auto v : p) g.append(v + 1);
              gens.append(g);
            }
            out["generators"] = gens;
            return out;
          })
      .def(
          "thm3",
          [](const Field& f, py::iterable x, std::vector<std::size_t> s, std::optional<py::iterable> gens) {
            if (!f.entry.action) throw InputError("field has no Galois source");
            for (auto& v : s) {
              if (v < 1) throw InputError("S is 1-based");
              --v;
            }
            return divisibility(verify_thm3(f.ideal(gens), to_vectors(x), s, *f.entry.action, f.tame()));
          },
          py::arg("x"), py::arg("s"), py::arg("gens") = py::none())
      .def(
          "thm4",
          [](const Field& f, py::iterable x, std::optional<py::iterable> gens) {
            return divisibility(verify_thm4(f.ideal(gens), to_vectors(x), f.tame()));
          },
          py::arg("x"), py::arg("gens") = py::none());

  m.def(
      "scan_pure",
      [](unsigned d, unsigned long pmin, unsigned long pmax, unsigned workers) {
        ScanResult r;
        {
          py::gil_scoped_release release;
          r = scan_family(pure_family(d, pmin, pmax), workers);
        }
        py::list rows;
        for (const auto& row : r.rows) {
          py::dict e;
          e["label"] = row.label;
          e["disc"] = pyint(row.disc);
          e["tame"] = pyint(row.tame);
          e["index"] = pyint(row.index);
          e["lambdas"] = row.lambdas;
          e["error"] = row.error ? py::object(py::str(*row.error)) : py::object(py::none());
          rows.append(e);
        }
        return py::make_tuple(rows, r.slopes);
      },
      py::arg("d") = 3, py::arg("pmin") = 5, py::arg("pmax") = 97, py::arg("workers") = 1);

  m.def(
      "run_suite",
      [](const std::string& suite, const std::string& config_path) {
        CorpusConfig cfg = load_config(config_path);
        std::vector<Record> recs;
        {
          py::gil_scoped_release release;
          std::vector<FieldEntry> fields;
          for (const auto& s : cfg.fields) fields.push_back(load_field(s, cfg.precision_ceiling));
          recs = run_suite(suite, fields, cfg.suite);
        }
        py::list out;
        for (const auto& r : recs) out.append(py::module_::import("json").attr("loads")(record_json(r)));
        return out;
      },
      py::arg("suite"), py::arg("config"));

  m.def("chebotarev", [](unsigned p) {
    ChebotarevReport r = chebotarev_minors(p);
    return py::make_tuple(r.minors, r.nonzero, r.pass);
  });
}
