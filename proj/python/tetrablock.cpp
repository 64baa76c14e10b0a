#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tetra/fundops.hpp"
#include "tetra/geometry.hpp"
#include "tetra/jointspec.hpp"
#include "tetra/model.hpp"
#include "tetra/poly.hpp"
#include "tetra/variety.hpp"
#include "tetra/vn.hpp"

namespace py = pybind11;
using namespace tetra;

namespace {

std::string repr(const TetraPoint& p) {
    auto c = [](cplx z) { return py::repr(py::cast(z)).cast<std::string>(); };
    return "TetraPoint(" + c(p.x1) + ", " + c(p.x2) + ", " + c(p.x3) + ")";
}

// accepts strings or Poly3 objects
std::vector<Poly3> to_polys(const py::iterable& items) {
    std::vector<Poly3> out;
    for (const py::handle h : items) {
        if (py::isinstance<py::str>(h))
            out.push_back(parse_poly(h.cast<std::string>()));
        else
            out.push_back(h.cast<Poly3>());
    }
    return out;
}

} // namespace

PYBIND11_MODULE(tetrablock, m) {
    m.doc() = "Tetrablock geometry, fundamental operators, truncated models and von Neumann checks";

    py::enum_<ErrorKind>(m, "ErrorKind")
        .value("DimensionMismatch", ErrorKind::DimensionMismatch)
        .value("NoConvergence", ErrorKind::NoConvergence)
        .value("NotPsd", ErrorKind::NotPsd)
        .value("UnsolvableOnRange", ErrorKind::UnsolvableOnRange)
        .value("BetaUndefined", ErrorKind::BetaUndefined)
        .value("NotCommuting", ErrorKind::NotCommuting)
        .value("DeflationFailed", ErrorKind::DeflationFailed)
        .value("NotContraction", ErrorKind::NotContraction)
        .value("FundamentalEquationsFail", ErrorKind::FundamentalEquationsFail)
        .value("HypothesisViolated", ErrorKind::HypothesisViolated)
        .value("NotPure", ErrorKind::NotPure)
        .value("TailNotReached", ErrorKind::TailNotReached)
        .value("OutsideResolventSet", ErrorKind::OutsideResolventSet)
        .value("EmptyFilter", ErrorKind::EmptyFilter)
        .value("Parse", ErrorKind::Parse);

    // TetraError(message) with .kind and .residual attributes
    static py::handle error_type = py::exception<Error>(m, "TetraError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object inst = error_type(e.what());
            inst.attr("kind") = py::cast(e.kind());
            inst.attr("residual") = e.residual();
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    // geometry
    py::enum_<RegionTag>(m, "RegionTag")
        .value("Interior", RegionTag::Interior)
        .value("DistinguishedBoundary", RegionTag::DistinguishedBoundary)
        .value("OtherTopBoundary", RegionTag::OtherTopBoundary)
        .value("ClosureInteriorFace", RegionTag::ClosureInteriorFace)
        .value("Outside", RegionTag::Outside);

    py::enum_<Semantics>(m, "Semantics").value("Open", Semantics::Open).value("Closed", Semantics::Closed);

    py::class_<TetraPoint>(m, "TetraPoint")
        .def(py::init<>())
        .def(py::init([](cplx x1, cplx x2, cplx x3) { return TetraPoint{x1, x2, x3}; }), py::arg("x1"),
             py::arg("x2"), py::arg("x3"))
        .def_readwrite("x1", &TetraPoint::x1)
        .def_readwrite("x2", &TetraPoint::x2)
        .def_readwrite("x3", &TetraPoint::x3)
        .def("__eq__", [](const TetraPoint& a, const TetraPoint& b) { return a == b; })
        .def("__iter__", [](const TetraPoint& p) { return py::iter(py::make_tuple(p.x1, p.x2, p.x3)); })
        .def("__repr__", &repr);

    py::class_<BetaPair>(m, "BetaPair")
        .def_readonly("beta1", &BetaPair::beta1)
        .def_readonly("beta2", &BetaPair::beta2);

    py::class_<KernelCheck>(m, "KernelCheck")
        .def_readonly("nonvanishing", &KernelCheck::nonvanishing)
        .def_readonly("min_modulus", &KernelCheck::min_modulus);

    auto point = [](const py::object& o) {
        if (py::isinstance<TetraPoint>(o)) return o.cast<TetraPoint>();
        const auto v = o.cast<std::vector<cplx>>();
        if (v.size() != 3) throw Error(ErrorKind::DimensionMismatch, "a point needs three coordinates");
        return TetraPoint{v[0], v[1], v[2]};
    };

    m.def("classify_tetra",
          [point](const py::object& pt, Semantics sem, double tol) { return classify_tetra(point(pt), sem, tol); },
          py::arg("point"), py::arg("semantics") = Semantics::Open, py::arg("tol") = kBoundaryBand);
    m.def("beta_decompose", [point](const py::object& pt, double tol) { return beta_decompose(point(pt), tol); },
          py::arg("point"), py::arg("tol") = kBoundaryBand);
    m.def("beta_compose",
          [](cplx b1, cplx b2, cplx x3) { return beta_compose({b1, b2}, x3); }, py::arg("beta1"), py::arg("beta2"),
          py::arg("x3"));
    m.def("kernel_check",
          [point](const py::object& pt, int grid, double tol) { return kernel_check(point(pt), grid, tol); },
          py::arg("point"), py::arg("grid") = 128, py::arg("tol") = kBoundaryBand);
    m.def("gamma_classify",
          [](cplx s, cplx p, Semantics sem, double tol) { return gamma_classify({s, p}, sem, tol); }, py::arg("s"),
          py::arg("p"), py::arg("semantics") = Semantics::Open, py::arg("tol") = kBoundaryBand);
    m.def("gamma_lift_check",
          [point](const py::object& pt, int samples, double tol) { return gamma_lift_check(point(pt), samples, tol); },
          py::arg("point"), py::arg("samples") = 64, py::arg("tol") = kBoundaryBand);
    m.def("in_bDE", [point](const py::object& pt, double tol) { return in_bDE(point(pt), tol); }, py::arg("point"),
          py::arg("tol") = kBoundaryBand);

    // linear algebra
    m.def("numerical_radius", [](const ComplexMatrix& a, int grid) {
        NumericalRadiusOptions o;
        o.grid = grid;
        return numerical_radius(a, o);
    }, py::arg("a"), py::arg("grid") = 512);
    m.def("operator_norm", &operator_norm, py::arg("a"));

    // joint spectrum
    m.def("joint_eigenvalues",
          [](const ComplexMatrix& a, const ComplexMatrix& b, std::uint64_t seed, double tol) {
              const JointSpectrum js = joint_eigenvalues(verify_commuting(a, b, tol), seed);
              std::vector<std::tuple<cplx, cplx, double>> out;
              for (const JointEigenvalue& e : js.pairs) out.emplace_back(e.lambda, e.mu, e.residual);
              return out;
          },
          py::arg("a"), py::arg("b"), py::arg("seed") = 42, py::arg("tol") = 1e-10,
          "Joint eigenvalues of a commuting pair as (lambda, mu, residual) tuples, with multiplicity.");

    // fundamental operators
    py::class_<OperatorTriple>(m, "OperatorTriple")
        .def_readonly("t1", &OperatorTriple::t1)
        .def_readonly("t2", &OperatorTriple::t2)
        .def_readonly("t3", &OperatorTriple::t3)
        .def_readonly("residuals", &OperatorTriple::residuals)
        .def_property_readonly("order", &OperatorTriple::order);

    m.def("make_triple", &make_triple, py::arg("t1"), py::arg("t2"), py::arg("t3"), py::arg("tol") = 1e-10);
    m.def("adjoint", &adjoint, py::arg("triple"));

    py::class_<FundamentalPair>(m, "FundamentalPair")
        .def_readonly("a1", &FundamentalPair::a1)
        .def_readonly("a2", &FundamentalPair::a2)
        .def_readonly("basis", &FundamentalPair::basis)
        .def_readonly("residual1", &FundamentalPair::residual1)
        .def_readonly("residual2", &FundamentalPair::residual2)
        .def("ambient_a1", &FundamentalPair::ambient_a1)
        .def("ambient_a2", &FundamentalPair::ambient_a2);

    m.def("extract_fundamental", [](const OperatorTriple& tr) { return extract_fundamental(tr); },
          py::arg("triple"));

    py::class_<RadiusCheck>(m, "RadiusCheck")
        .def_readonly("ok", &RadiusCheck::ok)
        .def_readonly("max_radius", &RadiusCheck::max_radius)
        .def_readonly("argmax", &RadiusCheck::argmax);

    m.def("verify_fundamental_radius",
          [](const ComplexMatrix& a1, const ComplexMatrix& a2, int grid, double tol) {
              return verify_fundamental_radius(a1, a2, grid, tol);
          },
          py::arg("a1"), py::arg("a2"), py::arg("grid") = 64, py::arg("tol") = 1e-8);

    py::enum_<SufficiencyVerdict>(m, "SufficiencyVerdict")
        .value("Certified", SufficiencyVerdict::Certified)
        .value("Inconclusive", SufficiencyVerdict::Inconclusive)
        .value("NotContraction", SufficiencyVerdict::NotContraction);

    py::class_<Sufficiency>(m, "Sufficiency")
        .def_readonly("verdict", &Sufficiency::verdict)
        .def_readonly("commutator", &Sufficiency::commutator)
        .def_readonly("normality_gap", &Sufficiency::normality_gap)
        .def_readonly("max_radius", &Sufficiency::max_radius)
        .def_readonly("notes", &Sufficiency::notes);

    m.def("check_sufficiency", [](const OperatorTriple& tr) { return check_sufficiency(tr); }, py::arg("triple"));
    m.def("check_E_isometry", &check_E_isometry, py::arg("triple"), py::arg("tol") = 1e-9);
    m.def("check_E_unitary", &check_E_unitary, py::arg("triple"), py::arg("tol") = 1e-9);
    m.def("check_pure", &check_pure, py::arg("t3"), py::arg("powers") = 64, py::arg("tol") = 1e-9);

    // varieties
    py::class_<VarietyParams>(m, "VarietyParams")
        .def_readonly("a1", &VarietyParams::a1)
        .def_readonly("a2", &VarietyParams::a2)
        .def_readonly("commutator", &VarietyParams::commutator)
        .def_readonly("normality_gap", &VarietyParams::normality_gap)
        .def_readonly("sup_norm", &VarietyParams::sup_norm)
        .def_readonly("sup_theta", &VarietyParams::sup_theta);

    m.def("make_variety_params",
          [](const ComplexMatrix& a1, const ComplexMatrix& a2) { return make_variety_params(a1, a2); },
          py::arg("a1"), py::arg("a2"));

    m.def("sample_variety",
          [](const VarietyParams& vp, const std::vector<double>& radii, int angles, std::uint64_t seed,
             unsigned threads) {
              SampleOptions so;
              so.seed = seed;
              so.threads = threads;
              const VarietyPointCloud cloud = sample_variety(vp, x3_circle_samples(radii, angles), so);
              std::vector<std::tuple<TetraPoint, RegionTag, double>> out;
              for (const VarietyRecord& rec : cloud.records)
                  for (std::size_t i = 0; i < rec.points.size(); ++i)
                      out.emplace_back(rec.points[i], rec.tags[i], rec.residuals[i]);
              return out;
          },
          py::arg("params"), py::arg("radii") = default_radii(), py::arg("angles") = 64, py::arg("seed") = 42,
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>(),
          "Variety points on concentric x3 circles as (point, tag, residual) tuples.");

    py::enum_<DistinguishedVerdict>(m, "DistinguishedVerdict")
        .value("Distinguished", DistinguishedVerdict::Distinguished)
        .value("DistinguishedEmpirical", DistinguishedVerdict::DistinguishedEmpirical)
        .value("NotDistinguished", DistinguishedVerdict::NotDistinguished)
        .value("Inconclusive", DistinguishedVerdict::Inconclusive)
        .value("HypothesisViolated", DistinguishedVerdict::HypothesisViolated);

    py::class_<DistinguishedReport>(m, "DistinguishedReport")
        .def_readonly("verdict", &DistinguishedReport::verdict)
        .def_readonly("sup_norm", &DistinguishedReport::sup_norm)
        .def_readonly("witness", &DistinguishedReport::witness)
        .def_readonly("witness_tag", &DistinguishedReport::witness_tag)
        .def_readonly("boundary_points", &DistinguishedReport::boundary_points)
        .def_readonly("interior_points", &DistinguishedReport::interior_points)
        .def_readonly("min_interior_margin", &DistinguishedReport::min_interior_margin)
        .def_readonly("notes", &DistinguishedReport::notes);

    m.def("classify_distinguished",
          [](const VarietyParams& vp, int boundary_grid, int interior_grid, unsigned threads) {
              DistinguishedOptions o;
              o.boundary_grid = boundary_grid;
              o.interior_grid = interior_grid;
              o.sampling.threads = threads;
              DistinguishedReport r = classify_distinguished(vp, o);
              r.cloud = {};
              return r;
          },
          py::arg("params"), py::arg("boundary_grid") = 256, py::arg("interior_grid") = 256, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    // models
    py::class_<ModelTriple>(m, "ModelTriple")
        .def_readonly("q1", &ModelTriple::q1)
        .def_readonly("q2", &ModelTriple::q2)
        .def_readonly("v", &ModelTriple::v)
        .def_readonly("a1", &ModelTriple::a1)
        .def_readonly("a2", &ModelTriple::a2)
        .def_readonly("n", &ModelTriple::n)
        .def_readonly("modes", &ModelTriple::modes)
        .def_readonly("residuals", &ModelTriple::residuals)
        .def("triple", &ModelTriple::triple);

    m.def("shift_matrix", &shift_matrix, py::arg("modes"));
    m.def("build_model", &build_model, py::arg("a1"), py::arg("a2"), py::arg("modes"), py::arg("tol") = 1e-9);
    m.def("compress_to_comodel", &compress_to_comodel, py::arg("model"), py::arg("m"));

    py::class_<DilationReport>(m, "DilationReport")
        .def_readonly("intertwining", &DilationReport::intertwining)
        .def_readonly("monomial_max", &DilationReport::monomial_max)
        .def_readonly("worst_monomial", &DilationReport::worst_monomial)
        .def_readonly("isometry_defect", &DilationReport::isometry_defect)
        .def_readonly("monomials", &DilationReport::monomials);

    m.def("dilation_check",
          [](const OperatorTriple& tr, Eigen::Index modes, int max_degree) {
              const Dilation d = dilate(tr, modes);
              return verify_dilation(tr, d.model, d.embedding.w, max_degree);
          },
          py::arg("triple"), py::arg("modes") = 16, py::arg("max_degree") = 4,
          "Builds the model dilation of a pure triple and reports the monomial residuals.");
    m.def("verify_dilation", &verify_dilation, py::arg("triple"), py::arg("model"), py::arg("w"),
          py::arg("max_degree"));

    m.def("characteristic_function", &characteristic_function, py::arg("t"), py::arg("z"));
    m.def("kernel_identity_residual", &kernel_identity_residual, py::arg("t"), py::arg("z"), py::arg("w"));

    py::class_<ModelIdentityReport>(m, "ModelIdentityReport")
        .def_readonly("residual", &ModelIdentityReport::residual)
        .def_readonly("tail", &ModelIdentityReport::tail)
        .def_readonly("modes_checked", &ModelIdentityReport::modes_checked);

    m.def("verify_model_identity", &verify_model_identity, py::arg("triple"), py::arg("modes"),
          py::arg("buffer") = 8, py::arg("tail_tol") = 1e-6);

    // polynomials and the von Neumann check
    py::class_<Poly3>(m, "Poly3")
        .def(py::init([](const std::string& text) { return parse_poly(text); }), py::arg("text"))
        .def_property_readonly("degree", &Poly3::degree)
        .def("lipschitz", &Poly3::lipschitz)
        .def("__call__", [point](const Poly3& p, const py::object& pt) { return eval_poly_point(p, point(pt)); })
        .def("__str__", [](const Poly3& p) { return to_string(p); })
        .def("__repr__", [](const Poly3& p) { return "Poly3('" + to_string(p) + "')"; })
        .def(py::self + py::self)
        .def(py::self * py::self);

    m.def("parse_poly", &parse_poly, py::arg("text"));
    m.def("eval_poly_triple",
          [](const Poly3& p, const OperatorTriple& tr) { return eval_poly_triple(p, tr); }, py::arg("poly"),
          py::arg("triple"));

    py::class_<VnEntry>(m, "VnEntry")
        .def_readonly("poly", &VnEntry::poly)
        .def_readonly("lhs", &VnEntry::lhs)
        .def_readonly("rhs", &VnEntry::rhs)
        .def_readonly("margin", &VnEntry::margin)
        .def_readonly("slack", &VnEntry::slack)
        .def_readonly("passed", &VnEntry::pass)
        .def_readonly("argmax", &VnEntry::argmax);

    py::class_<VnReport>(m, "VnReport")
        .def_readonly("hypotheses_met", &VnReport::hypotheses_met)
        .def_readonly("notes", &VnReport::notes)
        .def_readonly("a1", &VnReport::a1)
        .def_readonly("a2", &VnReport::a2)
        .def_readonly("boundary_points", &VnReport::boundary_points)
        .def_readonly("dropped_points", &VnReport::dropped_points)
        .def_readonly("entries", &VnReport::entries)
        .def("all_pass", &VnReport::all_pass)
        .def("violations", &VnReport::violations);

    m.def("verify_vn",
          [](const OperatorTriple& tr, const py::iterable& polys, int boundary_grid, std::uint64_t seed,
             unsigned threads) {
              VnOptions o;
              o.boundary_grid = boundary_grid;
              o.sampling.seed = seed;
              o.sampling.threads = threads;
              const std::vector<Poly3> ps = to_polys(polys);
              py::gil_scoped_release release;
              return verify_vn(tr, ps, o);
          },
          py::arg("triple"), py::arg("polys"), py::arg("boundary_grid") = 2048, py::arg("seed") = 42,
          py::arg("threads") = 1, "Polynomials may be given as strings or Poly3 objects.");
}
