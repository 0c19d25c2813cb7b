// pybind11 bindings: the analytic layer in full, plus grid-based operations
// sized for interactive use (fields cross the boundary as numpy arrays).

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghartree/criteria.hpp"
#include "ghartree/evolve.hpp"
#include "ghartree/groundstate.hpp"
#include "ghartree/io.hpp"
#include "ghartree/observables.hpp"
#include "ghartree/radial.hpp"

namespace py = pybind11;
using namespace ghartree;

namespace {

std::vector<py::ssize_t> field_shape(const Grid& g) {
    return std::vector<py::ssize_t>(static_cast<std::size_t>(g.dim), g.n);
}

py::array_t<std::complex<double>> field_to_numpy(const ComplexField& f) {
    py::array_t<std::complex<double>> arr(field_shape(f.grid));
    std::copy(f.values.begin(), f.values.end(), arr.mutable_data());
    return arr;
}

ComplexField numpy_to_field(const Grid& g, const py::array_t<std::complex<double>>& arr) {
    if (static_cast<std::size_t>(arr.size()) != g.size())
        throw GridMismatch("array size does not match grid");
    ComplexField f(g);
    const auto buf = arr.request();
    const auto* data = static_cast<const std::complex<double>*>(buf.ptr);
    std::copy(data, data + f.values.size(), f.values.begin());
    return f;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical laboratory for the focusing generalized Hartree equation";
    m.attr("__version__") = kArtifactVersion;

    py::register_exception<InvalidParams>(m, "InvalidParamsError", PyExc_ValueError);
    py::register_exception<PoisonedField>(m, "PoisonedFieldError", PyExc_ValueError);
    py::register_exception<WrongRegime>(m, "WrongRegimeError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainErrorError", PyExc_ValueError);
    py::register_exception<NoConvergence>(m, "NoConvergenceError", PyExc_RuntimeError);

    py::class_<EquationParams>(m, "EquationParams")
        .def(py::init<int, double, double>(), py::arg("dimension"), py::arg("power"),
             py::arg("potential_exponent"))
        .def_readwrite("dimension", &EquationParams::dimension)
        .def_readwrite("power", &EquationParams::power)
        .def_readwrite("potential_exponent", &EquationParams::potential_exponent)
        .def("validate", &EquationParams::validate)
        .def("__repr__", [](const EquationParams& p) { return "<" + p.describe() + ">"; });

    py::class_<CriticalityReport>(m, "CriticalityReport")
        .def_readonly("s_c", &CriticalityReport::s_c)
        .def_property_readonly("criticality",
                               [](const CriticalityReport& r) { return to_string(r.cls); })
        .def_readonly("k", &CriticalityReport::k)
        .def_readonly("alpha", &CriticalityReport::alpha)
        .def_readonly("lwp_regularity_ok", &CriticalityReport::lwp_regularity_ok)
        .def_readonly("a1_exponent_ok", &CriticalityReport::a1_exponent_ok);

    py::class_<AdmissiblePair>(m, "AdmissiblePair")
        .def_readonly("q", &AdmissiblePair::q)
        .def_readonly("r", &AdmissiblePair::r)
        .def_readonly("q_dual", &AdmissiblePair::q_dual)
        .def_readonly("r_dual", &AdmissiblePair::r_dual);

    m.def("scaling_index", &scaling_index);
    m.def("classify", &classify);
    m.def("canonical_pair", &canonical_pair);
    m.def("hls_partner_exponent", &hls_partner_exponent, py::arg("r2"), py::arg("params"));
    m.def("set_fft_threads", &set_fft_threads);

    py::class_<Grid>(m, "Grid")
        .def(py::init<int, int, double>(), py::arg("dim"), py::arg("n"), py::arg("half_extent"))
        .def_readonly("dim", &Grid::dim)
        .def_readonly("n", &Grid::n)
        .def_readonly("half_extent", &Grid::half_extent)
        .def_property_readonly("spacing", &Grid::spacing);

    py::class_<ObservableSet>(m, "ObservableSet")
        .def_readonly("time", &ObservableSet::time)
        .def_readonly("mass", &ObservableSet::mass)
        .def_readonly("energy", &ObservableSet::energy)
        .def_readonly("z_value", &ObservableSet::z_value)
        .def_readonly("grad_norm_sq", &ObservableSet::grad_norm_sq)
        .def_readonly("variance", &ObservableSet::variance)
        .def_readonly("variance_rate", &ObservableSet::variance_rate)
        .def_property_readonly("momentum", [](const ObservableSet& s) {
            return std::vector<double>(s.momentum.begin(), s.momentum.begin() + s.dim);
        });

    m.def("gaussian_field",
          [](const Grid& g, double beta, double gamma) {
              return field_to_numpy(ComplexField::gaussian(g, beta, gamma));
          },
          py::arg("grid"), py::arg("beta"), py::arg("gamma"));

    m.def("observe",
          [](const Grid& g, const py::array_t<std::complex<double>>& arr,
             const EquationParams& params, double time) {
              const ObservableEngine engine(
                  params,
                  std::make_shared<const RieszKernel>(g, params.potential_exponent));
              return engine.observe(numpy_to_field(g, arr), time);
          },
          py::arg("grid"), py::arg("field"), py::arg("params"), py::arg("time") = 0.0);

    m.def("riesz_convolve",
          [](const Grid& g, const py::array_t<std::complex<double>>& arr, double b) {
              const RieszKernel kernel(g, b);
              ComplexField f = numpy_to_field(g, arr);
              RealField density(g);
              for (std::size_t i = 0; i < density.values.size(); ++i)
                  density.values[i] = f.values[i].real();
              const RealField v = kernel.convolve(density);
              py::array_t<double> out(field_shape(g));
              std::copy(v.values.begin(), v.values.end(), out.mutable_data());
              return out;
          },
          py::arg("grid"), py::arg("density"), py::arg("b"));

    py::class_<GroundStateResult>(m, "GroundStateResult")
        .def_readonly("mass", &GroundStateResult::mass)
        .def_readonly("grad_sq", &GroundStateResult::grad_sq)
        .def_readonly("z", &GroundStateResult::z)
        .def_readonly("residual", &GroundStateResult::residual)
        .def_readonly("iterations", &GroundStateResult::iterations)
        .def_readonly("c_gn", &GroundStateResult::c_gn)
        .def("energy", &GroundStateResult::energy)
        .def_property_readonly("profile",
                               [](const GroundStateResult& r) { return field_to_numpy(r.profile); });

    m.def("petviashvili_solve",
          [](const EquationParams& params, const Grid& grid, double tol, int max_iter) {
              PetviashviliOptions opt;
              opt.tol = tol;
              opt.max_iter = max_iter;
              return petviashvili_solve(params, grid, opt);
          },
          py::arg("params"), py::arg("grid"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 500);
    m.def("sharp_gn_constant", &sharp_gn_constant);
    m.def("gn_quotient", &gn_quotient);

    py::class_<SharpConstants>(m, "SharpConstants")
        .def_readonly("c_gn", &SharpConstants::c_gn)
        .def_readonly("c_sobolev", &SharpConstants::c_sobolev)
        .def_readonly("c_hls", &SharpConstants::c_hls)
        .def_readonly("grad_Q_sq_critical", &SharpConstants::grad_Q_sq_critical)
        .def_readonly("energy_Q_critical", &SharpConstants::energy_Q_critical);
    m.def("critical_constants", &critical_constants, py::arg("dimension"), py::arg("b"));

    py::class_<CriticalProfile>(m, "CriticalProfile")
        .def_readonly("dimension", &CriticalProfile::dimension)
        .def_readonly("amplitude", &CriticalProfile::amplitude)
        .def_readonly("b", &CriticalProfile::b)
        .def_readonly("power", &CriticalProfile::power)
        .def("__call__", &CriticalProfile::operator());
    m.def("explicit_critical_Q", &explicit_critical_Q, py::arg("dimension"));

    py::class_<CriticalProfileCheck>(m, "CriticalProfileCheck")
        .def_readonly("residual", &CriticalProfileCheck::residual)
        .def_readonly("grad_sq", &CriticalProfileCheck::grad_sq)
        .def_readonly("z", &CriticalProfileCheck::z);
    m.def("verify_critical_profile", &verify_critical_profile, py::arg("profile"),
          py::arg("residual_r_max") = 30.0, py::arg("quad_r_max") = 2.0e3);

    m.def("f_threshold", &f_threshold, py::arg("x"), py::arg("k"));
    m.def("f_radicand", &f_radicand, py::arg("x"), py::arg("k"));

    py::class_<CriterionInput>(m, "CriterionInput")
        .def(py::init([](double mass, double energy, double variance0, double variance_rate0,
                         const EquationParams& params) {
                 CriterionInput in;
                 in.mass = mass;
                 in.energy = energy;
                 in.variance0 = variance0;
                 in.variance_rate0 = variance_rate0;
                 in.params = params;
                 return in;
             }),
             py::arg("mass"), py::arg("energy"), py::arg("variance0"),
             py::arg("variance_rate0"), py::arg("params"))
        .def_readwrite("mass", &CriterionInput::mass)
        .def_readwrite("energy", &CriterionInput::energy)
        .def_readwrite("variance0", &CriterionInput::variance0)
        .def_readwrite("variance_rate0", &CriterionInput::variance_rate0);

    py::class_<MechanicsState>(m, "MechanicsState")
        .def_readonly("omega", &MechanicsState::omega)
        .def_readonly("k", &MechanicsState::k)
        .def_readonly("alpha", &MechanicsState::alpha)
        .def_readonly("x0", &MechanicsState::x0)
        .def_readonly("slope0", &MechanicsState::slope0)
        .def_readonly("u_tilde_max", &MechanicsState::u_tilde_max);

    py::class_<BlowupVerdict>(m, "BlowupVerdict")
        .def_readonly("holds", &BlowupVerdict::holds)
        .def_readonly("f_value", &BlowupVerdict::f_value)
        .def_readonly("state", &BlowupVerdict::state);
    m.def("blowup_criterion", &blowup_criterion);

    py::class_<GaussianObservables>(m, "GaussianObservables")
        .def_readonly("mass", &GaussianObservables::mass)
        .def_readonly("variance0", &GaussianObservables::variance0)
        .def_readonly("variance_rate0", &GaussianObservables::variance_rate0)
        .def_readonly("grad_sq", &GaussianObservables::grad_sq)
        .def_readonly("z", &GaussianObservables::z)
        .def_readonly("energy", &GaussianObservables::energy);
    m.def("gaussian_observables", &gaussian_observables, py::arg("beta"), py::arg("gamma"),
          py::arg("params"));

    py::class_<GroundStateQuantities>(m, "GroundStateQuantities")
        .def_readonly("mass", &GroundStateQuantities::mass)
        .def_readonly("grad_sq", &GroundStateQuantities::grad_sq)
        .def_readonly("z", &GroundStateQuantities::z)
        .def_readonly("energy", &GroundStateQuantities::energy);
    m.def("make_ground_quantities", &make_ground_quantities, py::arg("mass"),
          py::arg("grad_sq"), py::arg("z"), py::arg("p"));

    py::class_<MeGValues>(m, "MeGValues")
        .def_readonly("me", &MeGValues::me)
        .def_readonly("g", &MeGValues::g);
    m.def("me_g_functionals", &me_g_functionals, py::arg("mass"), py::arg("energy"),
          py::arg("grad_sq"), py::arg("ground"), py::arg("params"));

    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("me", &ClassificationReport::me)
        .def_readonly("g", &ClassificationReport::g)
        .def_property_readonly("verdict",
                               [](const ClassificationReport& r) { return to_string(r.verdict); })
        .def_readonly("clauses", &ClassificationReport::clauses)
        .def_readonly("omega", &ClassificationReport::omega)
        .def_readonly("k", &ClassificationReport::k)
        .def_readonly("x0", &ClassificationReport::x0)
        .def_readonly("f_value", &ClassificationReport::f_value)
        .def_readonly("criterion_holds", &ClassificationReport::criterion_holds);

    m.def("dichotomy_classify",
          [](const CriterionInput& base, double grad_sq, bool finite_variance, bool radial,
             const std::optional<GroundStateQuantities>& ground) {
              DichotomyInput in;
              in.base = base;
              in.grad_sq = grad_sq;
              in.finite_variance = finite_variance;
              in.radial = radial;
              return dichotomy_classify(in, ground);
          },
          py::arg("input"), py::arg("grad_sq"), py::arg("finite_variance") = true,
          py::arg("radial") = true, py::arg("ground") = std::nullopt);

    py::enum_<ThresholdKind>(m, "ThresholdKind")
        .value("NEGATIVE_ENERGY", ThresholdKind::NegativeEnergy)
        .value("CRITERION_BLOWUP", ThresholdKind::CriterionBlowup)
        .value("ME_LOWER", ThresholdKind::MeLower)
        .value("ME_UPPER", ThresholdKind::MeUpper)
        .value("GRADIENT", ThresholdKind::Gradient)
        .value("ENERGY_CRITICAL_LOWER", ThresholdKind::EnergyCriticalLower)
        .value("ENERGY_CRITICAL_UPPER", ThresholdKind::EnergyCriticalUpper);
    m.def("threshold_solve", &threshold_solve, py::arg("kind"), py::arg("params"),
          py::arg("ground") = std::nullopt);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_property_readonly("status",
                               [](const TrajectoryRecord& r) { return to_string(r.status); })
        .def_readonly("final_time", &TrajectoryRecord::final_time)
        .def_readonly("steps", &TrajectoryRecord::steps)
        .def_readonly("initial_grad_norm", &TrajectoryRecord::initial_grad_norm)
        .def_readonly("final_grad_norm", &TrajectoryRecord::final_grad_norm)
        .def_readonly("samples", &TrajectoryRecord::samples)
        .def_property_readonly("final_state", [](const TrajectoryRecord& r) {
            return field_to_numpy(r.final_state);
        });

    m.def("evolve_gaussian",
          [](const EquationParams& params, const Grid& grid, double beta, double gamma,
             double dt0, double t_end, double dt_floor, int record_stride) {
              const Evolver evolver(params, grid);
              EvolveConfig cfg;
              cfg.dt0 = dt0;
              cfg.t_end = t_end;
              cfg.dt_floor = dt_floor;
              cfg.record_stride = record_stride;
              return evolver.evolve(ComplexField::gaussian(grid, beta, gamma), cfg);
          },
          py::arg("params"), py::arg("grid"), py::arg("beta"), py::arg("gamma"),
          py::arg("dt0") = 1e-3, py::arg("t_end") = 1.0, py::arg("dt_floor") = 1e-6,
          py::arg("record_stride") = 10);
}
