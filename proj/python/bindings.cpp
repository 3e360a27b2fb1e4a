#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "recqed/coupling.hpp"
#include "recqed/error.hpp"
#include "recqed/excitation_dynamics.hpp"
#include "recqed/ion_catalog.hpp"
#include "recqed/linear_response.hpp"
#include "recqed/wgm_design.hpp"

namespace py = pybind11;
using namespace recqed;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<cplx> to_array(const std::vector<cplx>& v) {
    return py::array_t<cplx>(static_cast<py::ssize_t>(v.size()), v.data());
}

py::array_t<double> times(const TimeGrid& g) {
    std::vector<double> t(g.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.time(i);
    return to_array(t);
}

// rows x 3 complex array (alpha, phi12, phi13)
py::array_t<cplx> states(const std::vector<dynamics::NodeState>& s) {
    py::array_t<cplx> out({static_cast<py::ssize_t>(s.size()), py::ssize_t{3}});
    auto a = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto k = static_cast<py::ssize_t>(i);
        a(k, 0) = s[i].alpha;
        a(k, 1) = s[i].phi12;
        a(k, 2) = s[i].phi13;
    }
    return out;
}

ResonatorSpec make_resonator(const IonTransition& t, double Q, std::optional<double> radius,
                             std::optional<double> volume) {
    ResonatorSpec r;
    r.n = t.host_index;
    r.wavelength_vac = t.wavelength_vac;
    r.Q = Q;
    if (volume) {
        r.mode_volume_override = volume;
        return r;
    }
    if (!radius) throw ValidationError("give radius or mode_volume");
    r.radius = *radius;
    return wgm::resolve_mode_volume(r);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rare-earth cavity QED design and simulation core";

    static py::exception<Error> base(m, "RecqedError", PyExc_RuntimeError);
    static py::exception<NumericError> numeric(m, "NumericError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const NumericError& e) {
            PyErr_SetString(numeric.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(base.ptr(), e.what());
        }
    });

    py::class_<IonTransition>(m, "IonTransition")
        .def(py::init<>())
        .def_readwrite("id", &IonTransition::id)
        .def_readwrite("wavelength_vac", &IonTransition::wavelength_vac)
        .def_readwrite("oscillator_strength", &IonTransition::oscillator_strength)
        .def_readwrite("T1", &IonTransition::T1)
        .def_readwrite("T2", &IonTransition::T2)
        .def_readwrite("T2_field_note", &IonTransition::T2_field_note)
        .def_readwrite("host_index", &IonTransition::host_index)
        .def("__eq__", [](const IonTransition& a, const IonTransition& b) { return a == b; })
        .def("__repr__", [](const IonTransition& t) { return "<IonTransition '" + t.id + "'>"; });

    m.def("load_catalog", &load_catalog, py::arg("path"));
    m.def("serialize_catalog", &serialize_catalog, py::arg("catalog"));
    m.def("get_transition", &get_transition, py::arg("catalog"), py::arg("id"),
          py::return_value_policy::copy);
    m.def("validate", py::overload_cast<const IonTransition&>(&validate), py::arg("transition"));

    py::class_<CavityFigures>(m, "CavityFigures")
        .def_readonly("mu", &CavityFigures::mu)
        .def_readonly("T_spon", &CavityFigures::T_spon)
        .def_readonly("chi_L", &CavityFigures::chi_L)
        .def_readonly("beta", &CavityFigures::beta)
        .def_readonly("mode_volume", &CavityFigures::mode_volume)
        .def_readonly("g", &CavityFigures::g)
        .def_readonly("kappa", &CavityFigures::kappa)
        .def_readonly("gamma", &CavityFigures::gamma)
        .def_readonly("gamma_h", &CavityFigures::gamma_h)
        .def_readonly("N0_pop", &CavityFigures::N0_pop)
        .def_readonly("N0_ph", &CavityFigures::N0_ph)
        .def_readonly("n0", &CavityFigures::n0);

    m.def("dipole_moment", &dipole_moment, py::arg("transition"));
    m.def("spontaneous_time", &spontaneous_time, py::arg("transition"));
    m.def("cavity_kappa", &cavity_kappa, py::arg("wavelength"), py::arg("Q"));
    m.def("coupling_g", &coupling_g, py::arg("transition"), py::arg("mode_volume"));
    m.def(
        "critical_numbers",
        [](double g, double kappa, double gamma, double gamma_p) {
            const CriticalNumbers c = critical_numbers({g, kappa, gamma, gamma_p});
            return py::dict(py::arg("N0_pop") = c.N0_pop, py::arg("N0_ph") = c.N0_ph,
                            py::arg("n0") = c.n0);
        },
        py::arg("g"), py::arg("kappa"), py::arg("gamma"), py::arg("gamma_p") = 0.0);
    m.def(
        "figures",
        [](const IonTransition& t, double Q, std::optional<double> radius,
           std::optional<double> mode_volume) {
            return figures(t, make_resonator(t, Q, radius, mode_volume));
        },
        py::arg("transition"), py::arg("Q"), py::arg("radius") = py::none(),
        py::arg("mode_volume") = py::none());

    m.def("fundamental_mode_volume", &wgm::fundamental_mode_volume, py::arg("radius"),
          py::arg("n"), py::arg("wavelength"));
    m.def(
        "required_q",
        [](const IonTransition& t, const std::string& target, py::array_t<double> radii) {
            const wgm::Target tg = target == "n0ph" ? wgm::Target::N0_ph : wgm::Target::N0_pop;
            if (target != "n0ph" && target != "n0pop") throw ValidationError("target must be n0pop or n0ph");
            const auto r = radii.unchecked<1>();
            std::vector<double> rv(static_cast<std::size_t>(r.shape(0)));
            for (py::ssize_t i = 0; i < r.shape(0); ++i) rv[static_cast<std::size_t>(i)] = r(i);
            std::vector<double> q;
            for (const auto& p : wgm::radius_q_curve(t, tg, rv)) {
                q.push_back(p.Q_required ? *p.Q_required : std::numeric_limits<double>::quiet_NaN());
            }
            return to_array(q);
        },
        py::arg("transition"), py::arg("target"), py::arg("radii"));

    m.def(
        "response",
        [](double g, double kappa, double gamma, py::array_t<double> deltas, bool atom) {
            const response::ResponseSystem s{g, kappa, gamma, atom};
            const auto d = deltas.unchecked<1>();
            std::vector<double> dv(static_cast<std::size_t>(d.shape(0)));
            for (py::ssize_t i = 0; i < d.shape(0); ++i) dv[static_cast<std::size_t>(i)] = d(i);
            std::vector<cplx> r, e;
            std::vector<double> phase;
            for (const auto& p : response::spectrum(s, dv)) {
                r.push_back(p.r);
                e.push_back(p.e);
                phase.push_back(p.phase);
            }
            return py::dict(py::arg("r") = to_array(r), py::arg("e") = to_array(e),
                            py::arg("phase") = to_array(phase));
        },
        py::arg("g"), py::arg("kappa"), py::arg("gamma"), py::arg("deltas"),
        py::arg("atom_present") = true);
    m.def(
        "fid",
        [](double g, double kappa, double gamma, double dt, double width, bool atom) {
            const response::ResponseSystem s{g, kappa, gamma, atom};
            const double centre = 10.0 * width;
            const TimeGrid grid = covering_grid(0.0, 2.0 * centre, dt);
            const auto r = response::fid_signal(s, response::gaussian_probe(grid, centre, width));
            return py::dict(py::arg("t") = times(r.output.grid), py::arg("out") = to_array(r.output.values),
                            py::arg("slow_rate") = response::slow_decay_rate(s),
                            py::arg("eliminated_rate") = response::eliminated_decay_rate(s));
        },
        py::arg("g"), py::arg("kappa"), py::arg("gamma"), py::arg("dt"), py::arg("width"),
        py::arg("atom_present") = true);

    m.def(
        "throw_catch",
        [](double g, double kappa, double gamma, std::optional<double> sigma, double step) {
            const double s = sigma ? *sigma : 10.0 / kappa;
            const dynamics::GaussianPulse target(s, dynamics::GaussianPulse::kDefaultHalfWidth * s);
            dynamics::ThrowCatchOptions opt;
            opt.synthesis.step = step;
            dynamics::ThrowCatchResult r;
            {
                py::gil_scoped_release release;
                r = dynamics::run_throw_catch(target, {g, kappa, gamma}, opt);
            }
            return py::dict(py::arg("t") = times(r.grid), py::arg("node1") = states(r.node1),
                            py::arg("node2") = states(r.node2),
                            py::arg("omega1") = to_array(r.omega1.omega),
                            py::arg("omega2") = to_array(r.omega2.omega),
                            py::arg("link") = to_array(r.link.values),
                            py::arg("output2") = to_array(r.output2.values),
                            py::arg("fidelity") = r.fidelity,
                            py::arg("residual_flux") = r.residual_flux,
                            py::arg("conservation_defect") = r.conservation_defect,
                            py::arg("tail_truncation") = r.tail_truncation,
                            py::arg("self_consistency") = r.self_consistency,
                            py::arg("step") = r.step);
        },
        py::arg("g"), py::arg("kappa"), py::arg("gamma") = 0.0, py::arg("sigma") = py::none(),
        py::arg("step") = 0.0);
}
