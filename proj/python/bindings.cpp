#include "commands.hpp"

#include "shearwave/analysis.hpp"
#include "shearwave/constitutive.hpp"
#include "shearwave/errors.hpp"
#include "shearwave/exact.hpp"
#include "shearwave/simulate.hpp"
#include "shearwave/verify.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace shearwave;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<double> to_array(const Sheet& s) {
    py::array_t<double> a({s.rows(), s.cols()});
    std::copy(s.values().begin(), s.values().end(), a.mutable_data());
    return a;
}

Sheet to_sheet(const Lattice& lat, const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || static_cast<std::size_t>(a.shape(0)) != lat.evolution.count ||
        static_cast<std::size_t>(a.shape(1)) != lat.space.count)
        throw Error(ErrorCode::InvalidArgument, "array shape does not match the lattice");
    Sheet s(lat);
    std::copy(a.data(), a.data() + a.size(), s.values().begin());
    return s;
}

Grid1D make_grid(std::size_t n, double a, double b, const std::string& boundary) {
    Grid1D g{n, a, b, Boundary::Periodic};
    if (boundary == "outflow")
        g.boundary = Boundary::Outflow;
    else if (boundary != "periodic")
        throw Error(ErrorCode::InvalidArgument, "boundary must be periodic or outflow");
    return g;
}

SimulationConfig make_config(const std::string& scheme, double cfl, double start, double end, std::size_t stride,
                             double blowup_factor, bool stop_at_blowup) {
    SimulationConfig c;
    if (scheme == "muscl_minmod")
        c.scheme = Scheme::MusclMinmod;
    else if (scheme != "lax_friedrichs")
        throw Error(ErrorCode::InvalidArgument, "scheme must be lax_friedrichs or muscl_minmod");
    c.cfl = cfl;
    c.start = start;
    c.end = end;
    c.snapshot_stride = stride;
    c.blowup_factor = blowup_factor;
    c.stop_at_blowup = stop_at_blowup;
    return c;
}

StateGrid make_state(const Grid1D& g, const std::vector<std::string>& names, const py::dict& fields) {
    StateGrid s{g, names, {}};
    for (const auto& n : names) {
        if (!fields.contains(n)) throw Error(ErrorCode::InvalidArgument, "missing initial field " + n);
        auto a = fields[py::str(n)].cast<py::array_t<double, py::array::c_style | py::array::forcecast>>();
        if (a.ndim() != 1 || static_cast<std::size_t>(a.size()) != g.n)
            throw Error(ErrorCode::InvalidArgument, "field " + n + " must have one value per cell");
        s.fields.emplace_back(a.data(), a.data() + a.size());
    }
    return s;
}

py::dict trajectory_dict(const Trajectory& t) {
    py::dict out;
    std::vector<double> coords;
    for (const auto& s : t.snapshots) coords.push_back(s.coordinate);
    out["coordinates"] = to_array(coords);
    const auto& g = t.snapshots.front().state.grid;
    std::vector<double> x(g.n);
    for (std::size_t i = 0; i < g.n; ++i) x[i] = g.center(i);
    out["x"] = to_array(x);
    py::dict fields;
    const auto& names = t.snapshots.front().state.names;
    for (std::size_t k = 0; k < names.size(); ++k) {
        py::array_t<double> a({t.snapshots.size(), g.n});
        double* p = a.mutable_data();
        for (const auto& s : t.snapshots) p = std::copy(s.state.fields[k].begin(), s.state.fields[k].end(), p);
        fields[py::str(names[k])] = a;
    }
    out["fields"] = fields;
    std::vector<double> dc, dg, ds;
    for (const auto& d : t.diagnostics) {
        dc.push_back(d.coordinate);
        dg.push_back(d.max_gradient);
        ds.push_back(d.max_speed);
    }
    out["diagnostics"] = py::dict(py::arg("coordinate") = to_array(dc), py::arg("max_gradient") = to_array(dg),
                                  py::arg("max_speed") = to_array(ds));
    out["initial_max_gradient"] = t.initial_max_gradient;
    out["blowup_coordinate"] = t.blowup_coordinate ? py::cast(*t.blowup_coordinate) : py::none();
    out["steps"] = t.steps;
    return out;
}

py::dict report_dict(const ResidualReport& r) {
    py::list levels;
    for (const auto& l : r.levels)
        levels.append(py::dict(py::arg("h") = l.h, py::arg("l2") = l.l2, py::arg("linf") = l.linf,
                               py::arg("floor") = l.floor));
    return py::dict(py::arg("levels") = levels, py::arg("order") = r.order, py::arg("order_linf") = r.order_linf,
                    py::arg("exact") = r.exact, py::arg("target") = r.target, py::arg("passed") = r.pass);
}

py::dict entry_dict(const ClassificationReport::Entry& e) {
    return py::dict(py::arg("flag") = to_string(e.flag), py::arg("residual") = e.residual,
                    py::arg("evaluated") = e.evaluated);
}

}  // namespace

PYBIND11_MODULE(_shearwave, m) {
    m.doc() = "Exact solutions, finite-volume solver and verification for 1+1 nonlinear shear waves.";

    static py::exception<Error> error(m, "ShearwaveError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto cls = py::reinterpret_borrow<py::object>(error.ptr());
            py::object exc = cls(e.what());
            exc.attr("code") = std::string(to_string(e.code()));
            exc.attr("locus") = e.locus();
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<ScalarFunction>(m, "Profile")
        .def(py::init([](std::function<double(double)> f, std::function<double(double)> df) {
                 return ScalarFunction(std::move(f), std::move(df));
             }),
             py::arg("f"), py::arg("df") = nullptr)
        .def("__call__", &ScalarFunction::operator())
        .def("derivative", &ScalarFunction::derivative)
        .def_property_readonly("label", &ScalarFunction::label)
        .def_static("constant", &ScalarFunction::constant)
        .def_static("linear", &ScalarFunction::linear, py::arg("k"), py::arg("c0") = 0.0)
        .def_static("polynomial", &ScalarFunction::polynomial)
        .def_static("sine", &ScalarFunction::sine, py::arg("amp"), py::arg("freq"), py::arg("offset") = 0.0)
        .def_static("cosine", &ScalarFunction::cosine, py::arg("amp"), py::arg("freq"), py::arg("offset") = 0.0);

    py::class_<ShearModulus>(m, "ShearModulus")
        .def_readonly("rho", &ShearModulus::rho)
        .def_property_readonly("mu0", &ShearModulus::mu0)
        .def_property_readonly("mu1", &ShearModulus::mu1)
        .def("Q", [](const ShearModulus& s, double x) { return eval_Q(s, x); })
        .def("dQ", [](const ShearModulus& s, double x) { return eval_dQ(s, x); })
        .def_static("mooney_rivlin", &ShearModulus::mooney_rivlin, py::arg("mu"), py::arg("rho") = 1.0)
        .def_static("cubic", &ShearModulus::cubic, py::arg("mu0"), py::arg("mu1"), py::arg("rho") = 1.0)
        .def_static("power", &ShearModulus::power, py::arg("mu"), py::arg("n"), py::arg("rho") = 1.0)
        .def_static("polynomial", &ShearModulus::polynomial, py::arg("coeffs"), py::arg("rho") = 1.0);

    py::class_<TempleFlux>(m, "TempleFlux")
        .def("__call__", [](const TempleFlux& f, double u, double v) { return eval_P(f, u, v); })
        .def("gradient", &TempleFlux::gradient)
        .def_property_readonly("label", &TempleFlux::label)
        .def_static("constant", &TempleFlux::constant)
        .def_static("product", &TempleFlux::product)
        .def_static("ratio", &TempleFlux::ratio)
        .def_static("radial", &TempleFlux::radial)
        .def_static("asymptotic", &TempleFlux::asymptotic)
        .def_static("product_form", &TempleFlux::product_form)
        .def_static("ratio_form", &TempleFlux::ratio_form)
        .def_static("polynomial", &TempleFlux::polynomial);

    m.def("beta_from_moduli",
          [](double mu0, double mu1, double rho, const std::string& convention) {
              if (convention != "speed" && convention != "squared_speed")
                  throw Error(ErrorCode::InvalidArgument, "convention must be speed or squared_speed");
              return beta_from_moduli(mu0, mu1, rho,
                                      convention == "speed" ? SpeedConvention::Speed : SpeedConvention::SquaredSpeed);
          },
          py::arg("mu0"), py::arg("mu1"), py::arg("rho") = 1.0, py::arg("convention") = "speed");

    m.def("carroll_dispersion", &carroll_dispersion, py::arg("modulus"), py::arg("amplitude"), py::arg("wavenumber"));
    m.def("eval_carroll",
          [](const ShearModulus& mod, double A, double k, double x, double t, int sign) {
              const FullState s = eval_carroll_full(CarrollWave(mod, A, k, sign), x, t);
              return py::make_tuple(s.U, s.V, s.M, s.N);
          },
          py::arg("modulus"), py::arg("amplitude"), py::arg("wavenumber"), py::arg("x"), py::arg("t"),
          py::arg("sign") = 1, "(U, V, M, N) of the circularly polarized wave.");
    m.def("eval_asymptotic_linear",
          [](double beta, double A, const ScalarFunction& theta, double X, double tau) {
              const StrainState s = eval_asymptotic_linear(beta, A, theta, X, tau);
              return py::make_tuple(s.U, s.V);
          },
          py::arg("beta"), py::arg("amplitude"), py::arg("theta"), py::arg("X"), py::arg("tau"));
    m.def("eval_simple_wave", py::overload_cast<double, const ProfileFunction&, double, double>(&eval_simple_wave),
          py::arg("beta"), py::arg("phi"), py::arg("X"), py::arg("tau"));
    m.def("hodograph_forward",
          [](const ScalarFunction& s3, const ScalarFunction& s4, double beta, double theta, double rho) {
              const auto p = hodograph_forward({s3, s4}, beta, theta, rho);
              return py::make_tuple(p.X, p.tau);
          },
          py::arg("s3"), py::arg("s4"), py::arg("beta"), py::arg("theta"), py::arg("rho"));
    m.def("hodograph_invert",
          [](const ScalarFunction& s3, const ScalarFunction& s4, double beta, double X, double tau, double theta0,
             double rho0) {
              const auto p = hodograph_invert({s3, s4}, beta, X, tau, {rho0, theta0});
              return py::make_tuple(p.theta, p.rho);
          },
          py::arg("s3"), py::arg("s4"), py::arg("beta"), py::arg("X"), py::arg("tau"), py::arg("theta0"),
          py::arg("rho0"), "(theta, rho) near the seed (theta0, rho0).");
    m.def("eval_separable",
          [](const TempleFlux& f, double k, double phi0, double dphi0, const std::vector<double>& t) {
              const auto s = eval_separable(f, k, phi0, dphi0, t);
              return py::make_tuple(to_array(s.phi()), to_array(s.dphi()));
          },
          py::arg("flux"), py::arg("k"), py::arg("phi0"), py::arg("dphi0"), py::arg("t"));

    m.def("temple_eigen",
          [](const TempleFlux& f, double u, double v) {
              const auto e = temple_eigen(f, u, v);
              return py::dict(py::arg("lambda1") = e.lambda1, py::arg("lambda2") = e.lambda2,
                              py::arg("d1") = e.d1, py::arg("d2") = e.d2, py::arg("ld1") = e.ld1,
                              py::arg("ld2") = e.ld2);
          },
          py::arg("flux"), py::arg("u"), py::arg("v"));
    m.def("classify",
          [](const TempleFlux& f, const std::vector<Vec2>& samples) {
              const auto r = classify(f, samples);
              return py::dict(py::arg("equal_eigenvalues") = entry_dict(r.equal_eigenvalues),
                              py::arg("completely_exceptional") = entry_dict(r.completely_exceptional),
                              py::arg("hamiltonian") = entry_dict(r.hamiltonian),
                              py::arg("decouples") = entry_dict(r.decouples));
          },
          py::arg("flux"), py::arg("samples"));

    m.def("evolve_full",
          [](const ShearModulus& mod, const py::dict& init, std::size_t n, double a, double b,
             const std::string& boundary, const std::string& scheme, double cfl, double start, double end,
             std::size_t stride, double blowup_factor, bool stop_at_blowup) {
              const Grid1D g = make_grid(n, a, b, boundary);
              const auto s = make_state(g, {"U", "M", "V", "N"}, init);
              const auto c = make_config(scheme, cfl, start, end, stride, blowup_factor, stop_at_blowup);
              py::gil_scoped_release release;
              Trajectory t = evolve_full(mod, s, c);
              py::gil_scoped_acquire acquire;
              return trajectory_dict(t);
          },
          py::arg("modulus"), py::arg("init"), py::arg("n"), py::arg("a"), py::arg("b"),
          py::arg("boundary") = "periodic", py::arg("scheme") = "lax_friedrichs", py::arg("cfl") = 0.5,
          py::arg("start") = 0.0, py::arg("end") = 1.0, py::arg("snapshot_stride") = 0,
          py::arg("blowup_factor") = 50.0, py::arg("stop_at_blowup") = false);

    auto bind_evolve = [&m](const char* name, std::vector<std::string> names,
                            Trajectory (*fn)(double, const StateGrid&, const SimulationConfig&)) {
        m.def(name,
              [names, fn](double beta, const py::dict& init, std::size_t n, double a, double b,
                          const std::string& boundary, const std::string& scheme, double cfl, double start,
                          double end, std::size_t stride, double blowup_factor, bool stop_at_blowup) {
                  const Grid1D g = make_grid(n, a, b, boundary);
                  const auto s = make_state(g, names, init);
                  const auto c = make_config(scheme, cfl, start, end, stride, blowup_factor, stop_at_blowup);
                  py::gil_scoped_release release;
                  Trajectory t = fn(beta, s, c);
                  py::gil_scoped_acquire acquire;
                  return trajectory_dict(t);
              },
              py::arg("beta"), py::arg("init"), py::arg("n"), py::arg("a"), py::arg("b"),
              py::arg("boundary") = "periodic", py::arg("scheme") = "lax_friedrichs", py::arg("cfl") = 0.5,
              py::arg("start") = 0.0, py::arg("end") = 1.0, py::arg("snapshot_stride") = 0,
              py::arg("blowup_factor") = 50.0, py::arg("stop_at_blowup") = false);
    };
    bind_evolve("evolve_asymptotic", {"U", "V"}, &evolve_asymptotic);
    bind_evolve("evolve_scalar", {"rho"}, &evolve_scalar);

    m.def("breaking_estimate", &breaking_estimate, py::arg("beta"), py::arg("rho0"), py::arg("tau_grid"));
    m.def("set_thread_count", &set_thread_count);

    m.def("residual_asymptotic",
          [](const std::vector<std::tuple<double, double, std::size_t, double, double, std::size_t>>& lattices,
             const std::vector<std::pair<py::array_t<double>, py::array_t<double>>>& fields, double beta,
             double target) {
              if (lattices.size() != fields.size())
                  throw Error(ErrorCode::InvalidArgument, "one lattice per field level is required");
              std::vector<PolarField> levels;
              for (std::size_t i = 0; i < lattices.size(); ++i) {
                  const auto& [x0, x1, nx, t0, t1, nt] = lattices[i];
                  const Lattice lat{Axis::spanning(x0, x1, nx), Axis::spanning(t0, t1, nt)};
                  levels.push_back({to_sheet(lat, fields[i].first), to_sheet(lat, fields[i].second)});
              }
              return report_dict(residual_asymptotic(levels, beta, target));
          },
          py::arg("lattices"), py::arg("fields"), py::arg("beta"), py::arg("target") = 1.8,
          "lattices: (X0, X1, nX, tau0, tau1, ntau) per level; fields: (theta, rho) arrays per level.");

    m.def("hodograph_field",
          [](const ScalarFunction& s3, const ScalarFunction& s4, double beta, double X0, double X1, std::size_t nX,
             double t0, double t1, std::size_t nt, double theta0, double rho0) {
              const Lattice lat{Axis::spanning(X0, X1, nX), Axis::spanning(t0, t1, nt)};
              const auto f = hodograph_field({s3, s4}, beta, lat, {rho0, theta0});
              return py::make_tuple(to_array(f.theta), to_array(f.rho));
          },
          py::arg("s3"), py::arg("s4"), py::arg("beta"), py::arg("X0"), py::arg("X1"), py::arg("nX"),
          py::arg("tau0"), py::arg("tau1"), py::arg("ntau"), py::arg("theta0"), py::arg("rho0"));

    m.def("run_command",
          [](const std::string& command, const std::string& config_json, const std::filesystem::path& out,
             int threads, bool quiet) {
              app::Options o;
              o.out = out;
              o.threads = threads;
              o.quiet = quiet;
              return app::run_command(command, nlohmann::json::parse(config_json), o);
          },
          py::arg("command"), py::arg("config_json"), py::arg("out"), py::arg("threads") = 1, py::arg("quiet") = true,
          "Runs a CLI command on a JSON config string; returns the CLI exit code.");
}
