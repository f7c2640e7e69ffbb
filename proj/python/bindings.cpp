#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "hypheat/chaos.hpp"
#include "hypheat/regions.hpp"
#include "hypheat/semigroup.hpp"
#include "hypheat/space.hpp"
#include "hypheat/spherical.hpp"
#include "hypheat/transform.hpp"
#include "hypheat/version.hpp"

namespace py = pybind11;
using namespace hypheat;

namespace {

py::array_t<Complex> to_array(const std::vector<Complex>& v) {
    py::array_t<Complex> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_array(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

std::vector<Complex> from_object(const py::object& values) {
    auto arr = py::array_t<Complex, py::array::c_style | py::array::forcecast>::ensure(values);
    if (!arr) throw std::invalid_argument("expected a 1-d complex array");
    std::vector<Complex> out(static_cast<std::size_t>(arr.size()));
    std::copy(arr.data(), arr.data() + arr.size(), out.begin());
    return out;
}

const char* strip_str(StripPosition s) {
    switch (s) {
        case StripPosition::inside: return "inside";
        case StripPosition::boundary: return "boundary";
        default: return "outside";
    }
}

const char* region_str(RegionPosition s) {
    switch (s) {
        case RegionPosition::interior: return "interior";
        case RegionPosition::boundary: return "boundary";
        default: return "exterior";
    }
}

py::dict section_dict(const AxisSection& s) {
    py::dict d;
    d["kind"] = s.kind == AxisSection::Kind::empty   ? "empty"
                : s.kind == AxisSection::Kind::point ? "point"
                                                     : "interval";
    d["height"] = s.height;
    d["has_interior"] = s.has_interior();
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "radial spherical analysis and shifted heat-semigroup dynamics on hyperbolic spaces";
    m.attr("__version__") = version_string;

    py::class_<HyperbolicSpace>(m, "Space")
        .def_readonly("dim", &HyperbolicSpace::dim)
        .def_readonly("rho", &HyperbolicSpace::rho)
        .def_readonly("sphere_area", &HyperbolicSpace::sphere_area)
        .def("__repr__", [](const HyperbolicSpace& s) {
            return "Space(H^" + std::to_string(s.dim) + ", rho=" + std::to_string(s.rho) + ")";
        });
    m.def("make_space", &make_space, py::arg("n"));
    m.def("volume_density", &volume_density, py::arg("space"), py::arg("r"));
    m.def("ball_volume", &ball_volume, py::arg("space"), py::arg("r"));

    py::class_<RadialGrid>(m, "RadialGrid")
        .def_static("uniform", &RadialGrid::uniform, py::arg("h"), py::arg("r_max"))
        .def_property_readonly("points", [](const RadialGrid& g) { return to_array(g.points); })
        .def_property_readonly("spacing", [](const RadialGrid& g) { return g.spacing; })
        .def("__len__", &RadialGrid::size);

    py::class_<RadialFunction>(m, "RadialFunction")
        .def(py::init([](const RadialGrid& grid, const py::object& values) {
                 RadialFunction f;
                 f.grid = grid;
                 f.values = from_object(values);
                 if (f.values.size() != grid.size())
                     throw std::invalid_argument("values length must match the grid");
                 return f;
             }),
             py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &RadialFunction::grid)
        .def_property_readonly("values", [](const RadialFunction& f) { return to_array(f.values); });

    m.def("spherical_function", &spherical_function, py::arg("space"), py::arg("lam"),
          py::arg("grid"));
    m.def(
        "spherical_values",
        [](const HyperbolicSpace& s, Complex lam, const std::vector<double>& radii) {
            return to_array(spherical_values(s, lam, radii));
        },
        py::arg("space"), py::arg("lam"), py::arg("radii"));
    m.def("radial_laplacian", &radial_laplacian, py::arg("space"), py::arg("f"));
    m.def("lp_norm", py::overload_cast<const HyperbolicSpace&, const RadialFunction&, double, double>(&lp_norm),
          py::arg("space"), py::arg("f"), py::arg("p"), py::arg("r_cut"));
    m.def("lp_norm", py::overload_cast<const HyperbolicSpace&, const RadialFunction&, double>(&lp_norm),
          py::arg("space"), py::arg("f"), py::arg("p"));

    m.def("harish_chandra_c", &harish_chandra_c, py::arg("space"), py::arg("lam"));
    m.def("plancherel_density", &plancherel_density, py::arg("space"), py::arg("lam"));
    m.def(
        "lp_membership",
        [](const HyperbolicSpace& s, Complex lam, double p, double tol) {
            return std::string(strip_str(lp_membership(s, lam, p, tol)));
        },
        py::arg("space"), py::arg("lam"), py::arg("p"), py::arg("tol") = 1e-9);

    py::class_<SpectralGrid>(m, "SpectralGrid")
        .def_static("gauss_legendre", &SpectralGrid::gauss_legendre, py::arg("lambda_max"),
                    py::arg("panels"), py::arg("order"))
        .def_property_readonly("points", [](const SpectralGrid& g) { return to_array(g.points); })
        .def_property_readonly("weights", [](const SpectralGrid& g) { return to_array(g.weights); });
    py::class_<SpectralFunction>(m, "SpectralFunction")
        .def_readonly("grid", &SpectralFunction::grid)
        .def_property_readonly("values",
                               [](const SpectralFunction& f) { return to_array(f.values); });
    py::class_<ForwardResult>(m, "ForwardResult")
        .def_readonly("spectral", &ForwardResult::spectral)
        .def_readonly("tail_fraction", &ForwardResult::tail_fraction)
        .def_readonly("quad_error", &ForwardResult::quad_error);
    py::register_exception<TruncationError>(m, "TruncationError");

    m.def(
        "forward_transform",
        [](const HyperbolicSpace& s, const RadialFunction& f, const SpectralGrid& g, Complex off) {
            return forward_transform(s, f, g, off);
        },
        py::arg("space"), py::arg("f"), py::arg("grid"), py::arg("lambda_offset") = Complex(0, 0));
    m.def(
        "inverse_transform",
        [](const HyperbolicSpace& s, const SpectralFunction& g, const RadialGrid& grid) {
            return inverse_transform(s, g, grid);
        },
        py::arg("space"), py::arg("g"), py::arg("grid"));
    m.def(
        "calibrate_inversion_constant",
        [](const HyperbolicSpace& s, double width) {
            CalibrationOptions o;
            o.bump_width = width;
            return calibrate_inversion_constant(s, o);
        },
        py::arg("space"), py::arg("bump_width") = 1.0);
    m.def("inversion_constant", &inversion_constant, py::arg("space"));

    py::class_<SemigroupConfig>(m, "SemigroupConfig")
        .def(py::init([](const HyperbolicSpace& s, double p, double c, double t) {
                 return SemigroupConfig{s, p, c, t};
             }),
             py::arg("space"), py::arg("p"), py::arg("c"), py::arg("t"))
        .def_readonly("p", &SemigroupConfig::p)
        .def_readonly("shift", &SemigroupConfig::shift)
        .def_readonly("t", &SemigroupConfig::t);
    m.def(
        "evolve",
        [](const SemigroupConfig& cfg, const RadialFunction& f) { return evolve(cfg, f); },
        py::arg("config"), py::arg("f"));
    m.def(
        "evolve_eigen",
        [](const SemigroupConfig& cfg, Complex z) {
            EigenFactor ef = evolve_eigen(cfg, z);
            py::dict d;
            d["factor"] = ef.factor;
            d["trend"] = ef.trend == ModeTrend::decaying   ? "decaying"
                         : ef.trend == ModeTrend::growing ? "growing"
                                                          : "unimodular";
            return d;
        },
        py::arg("config"), py::arg("z"));
    m.def(
        "orbit_trace",
        [](const SemigroupConfig& cfg, const RadialFunction& f, const std::vector<double>& times) {
            return orbit_trace(cfg, f, times);
        },
        py::arg("config"), py::arg("f"), py::arg("times"));
    m.def("heat_kernel_h3", &heat_kernel_h3, py::arg("t"), py::arg("r"));
    m.def(
        "evolve_convolution_h3",
        [](const SemigroupConfig& cfg, const RadialFunction& f) {
            return evolve_convolution_h3(cfg, f);
        },
        py::arg("config"), py::arg("f"));

    m.def("apex_threshold", &apex_threshold, py::arg("rho"), py::arg("p"));
    py::class_<ParabolicRegion>(m, "ParabolicRegion")
        .def(py::init([](double rho, double p, double c) { return ParabolicRegion{rho, p, c}; }),
             py::arg("rho"), py::arg("p"), py::arg("c"))
        .def_readonly("rho", &ParabolicRegion::rho)
        .def_readonly("p", &ParabolicRegion::p)
        .def_readonly("shift", &ParabolicRegion::shift)
        .def("half_width", &ParabolicRegion::half_width)
        .def("apex", &ParabolicRegion::apex);
    m.def(
        "region_contains",
        [](const ParabolicRegion& r, Complex w, double tol) {
            return std::string(region_str(region_contains(r, w, tol)));
        },
        py::arg("region"), py::arg("w"), py::arg("tol") = 1e-9);
    m.def("parabola_boundary", &parabola_boundary, py::arg("region"), py::arg("x"));
    m.def(
        "imaginary_axis_section",
        [](const ParabolicRegion& r) { return section_dict(imaginary_axis_section(r)); },
        py::arg("region"));
    m.def("sector_half_angle", &sector_half_angle, py::arg("p"));
    m.def("branch_mu", py::overload_cast<double, double, Complex>(&branch_mu), py::arg("rho"),
          py::arg("shift"), py::arg("z"));
    m.def(
        "product_threshold",
        [](const std::vector<double>& cs) { return product_threshold(cs); },
        py::arg("thresholds"));

    py::class_<EigenAtom>(m, "EigenAtom")
        .def_readonly("z", &EigenAtom::z)
        .def_readonly("mu", &EigenAtom::mu)
        .def_readonly("coeff", &EigenAtom::coeff);
    m.def("make_atom", &make_atom, py::arg("region"), py::arg("z"), py::arg("coeff"));
    m.def("eigen_map", &eigen_map, py::arg("space"), py::arg("shift"), py::arg("z"), py::arg("grid"));

    py::class_<PeriodicPoint>(m, "PeriodicPoint")
        .def_readonly("t_period", &PeriodicPoint::t_period)
        .def_readonly("atoms", &PeriodicPoint::atoms)
        .def_readonly("profile", &PeriodicPoint::profile)
        .def_readonly("eigen_factor_error", &PeriodicPoint::eigen_factor_error);
    m.def(
        "periodic_point",
        [](const HyperbolicSpace& s, double p, double c, double T,
           const std::vector<std::pair<int, Complex>>& harmonics, const RadialGrid& grid) {
            return periodic_point(s, p, c, T, harmonics, grid);
        },
        py::arg("space"), py::arg("p"), py::arg("c"), py::arg("t_period"), py::arg("harmonics"),
        py::arg("grid"));

    py::class_<DensityFit>(m, "DensityFit")
        .def_property_readonly("coeffs", [](const DensityFit& f) { return to_array(f.coeffs); })
        .def_readonly("resid_l2", &DensityFit::resid_l2)
        .def_readonly("resid_lp", &DensityFit::resid_lp)
        .def_readonly("condition", &DensityFit::condition)
        .def_readonly("ridge", &DensityFit::ridge);
    m.def(
        "density_fit",
        [](const HyperbolicSpace& s, double p, const RadialFunction& target,
           const std::vector<EigenAtom>& atoms) { return density_fit(s, p, target, atoms); },
        py::arg("space"), py::arg("p"), py::arg("target"), py::arg("dictionary"));

    m.def(
        "certify_json",
        [](const std::vector<int>& dims, double p, double c, std::uint64_t seed, bool windowed) {
            std::vector<HyperbolicSpace> factors;
            for (int n : dims) factors.push_back(make_space(n));
            CertifyOptions opts;
            opts.seed = seed;
            opts.run_windowed_evolution = windowed;
            return certify(factors, p, c, opts).to_json().dump(2);
        },
        py::arg("dims"), py::arg("p"), py::arg("c"), py::arg("seed"), py::arg("windowed") = true);
}
