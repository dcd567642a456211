#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "heatsym/errors.hpp"
#include "heatsym/exact_solutions.hpp"
#include "heatsym/model_catalog.hpp"
#include "heatsym/schemes.hpp"
#include "heatsym/solution_io.hpp"
#include "heatsym/symmetry.hpp"
#include "heatsym/transforms.hpp"

namespace py = pybind11;
using namespace heatsym;

namespace {

HeatModel model_from(const std::string& key, std::optional<double> sigma, std::optional<double> n,
                     std::optional<double> delta, std::optional<double> alpha, std::optional<double> sign) {
    HeatModel m = parse_model_key(key);
    if (sigma) m.sigma = sigma;
    if (n) m.n = n;
    if (delta) m.delta = delta;
    if (alpha) m.alpha = alpha;
    if (sign) m.sign = sign;
    return canonical(m);
}

const SymmetryGenerator& generator(const ModelEntry& e, SchemeId id, const std::string& label) {
    if (const SchemeBinding* b = e.binding(id))
        for (const auto& g : b->generators)
            if (g.label == label) return g;
    for (const auto& g : e.generators)
        if (g.label == label) return g;
    fail(ErrorCode::InvalidParameter, "no generator " + label);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Symmetry-preserving difference schemes for u_t = (K(u) u_x)_x + Q(u)";

    static py::exception<Error> error(m, "HeatsymError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<HeatModel>(m, "HeatModel")
        .def(py::init(&model_from), py::arg("key"), py::arg("sigma") = py::none(), py::arg("n") = py::none(),
             py::arg("delta") = py::none(), py::arg("alpha") = py::none(), py::arg("sign") = py::none())
        .def_readonly("sigma", &HeatModel::sigma)
        .def_readonly("n", &HeatModel::n)
        .def_readonly("delta", &HeatModel::delta)
        .def_readonly("alpha", &HeatModel::alpha)
        .def_readonly("sign", &HeatModel::sign)
        .def_property_readonly("key", [](const HeatModel& h) { return model_key(h); })
        .def("__repr__", [](const HeatModel& h) { return "HeatModel('" + model_key(h) + "')"; });

    m.def("list_models", &list_models);
    m.def("schemes", [](const HeatModel& h) {
        std::vector<std::string> out;
        for (SchemeId id : lookup(h).schemes()) out.emplace_back(to_string(id));
        return out;
    });
    m.def("generators", [](const HeatModel& h) {
        std::vector<std::string> out;
        for (const auto& g : lookup(h).generators) out.push_back(g.label);
        return out;
    });
    m.def("representative_model", [](const std::string& id) { return representative_model(parse_scheme_id(id)); });

    py::class_<Layer>(m, "Layer")
        .def(py::init<>())
        .def_readwrite("t", &Layer::t)
        .def_readwrite("x", &Layer::x)
        .def_readwrite("u", &Layer::u)
        .def_readwrite("s", &Layer::s)
        .def_readwrite("rho", &Layer::rho)
        .def("__len__", &Layer::size);

    m.def("uniform_layer", &uniform_layer, py::arg("t"), py::arg("x_left"), py::arg("x_right"), py::arg("nodes"),
          py::arg("u0"));
    m.def("init_mass_mesh", &init_mass_mesh, py::arg("u0"), py::arg("x_left"), py::arg("h_s"), py::arg("count"));
    m.def("uniform_time", [](double T, int k) { return uniform_time(T, k).times; });
    m.def("log_time_mesh",
          [](double delta, double sigma, double T, int k) { return log_time_mesh(delta, sigma, T, k).times; },
          py::arg("delta"), py::arg("sigma"), py::arg("T"), py::arg("k"));

    auto params = [](const HeatModel& h, double weight_alpha,
                     std::optional<std::function<double(double)>> K,
                     std::optional<std::function<double(double)>> Q) {
        SchemeParams p;
        p.model = h;
        p.weight_alpha = weight_alpha;
        if (K) p.K_fn = *K;
        if (Q) p.Q_fn = *Q;
        return p;
    };

    m.def(
        "run",
        [params](const std::string& scheme, const HeatModel& h, const Layer& initial, std::vector<double> times,
                 double weight_alpha, std::optional<std::function<double(double)>> K,
                 std::optional<std::function<double(double)>> Q) {
            const SchemeParams p = params(h, weight_alpha, K, Q);
            py::gil_scoped_release release;
            return run(parse_scheme_id(scheme), p, initial, TimeMesh{std::move(times)});
        },
        py::arg("scheme"), py::arg("model"), py::arg("initial"), py::arg("times"), py::arg("weight_alpha") = 1.0,
        py::arg("K") = py::none(), py::arg("Q") = py::none());

    m.def(
        "max_residual",
        [params](const std::string& scheme, const HeatModel& h, const std::vector<Layer>& layers,
                 double weight_alpha, std::optional<std::function<double(double)>> K,
                 std::optional<std::function<double(double)>> Q) {
            return max_residual(parse_scheme_id(scheme), params(h, weight_alpha, K, Q), layers);
        },
        py::arg("scheme"), py::arg("model"), py::arg("layers"), py::arg("weight_alpha") = 1.0,
        py::arg("K") = py::none(), py::arg("Q") = py::none());

    m.def(
        "invariance_defect",
        [params](const std::string& scheme, const HeatModel& h, const std::string& label,
                 const std::vector<Layer>& layers, std::size_t n, std::size_t i, double eps) {
            const SchemeId id = parse_scheme_id(scheme);
            const ModelEntry e = lookup(h);
            const Stencil s = stencil_at(layers.at(n), layers.at(n + 1), i);
            return invariance_defect(id, params(h, 1.0, {}, {}), generator(e, id, label), s, eps);
        },
        py::arg("scheme"), py::arg("model"), py::arg("generator"), py::arg("layers"), py::arg("n"), py::arg("i"),
        py::arg("eps"));

    m.def(
        "transform",
        [](const std::string& name, const std::vector<Layer>& layers, double delta, double sigma, bool inverse) {
            const TransformId tr = TransformId::parse(name, delta, sigma);
            return inverse ? inverse_transform_solution(tr, layers) : transform_solution(tr, layers);
        },
        py::arg("name"), py::arg("layers"), py::arg("delta") = 1.0, py::arg("sigma") = 1.0,
        py::arg("inverse") = false);

    m.def(
        "kernel_value",
        [](double t, double x, double C, double t0, double a) { return kernel_value({C, t0, a}, t, x); },
        py::arg("t"), py::arg("x"), py::arg("C") = 1.0, py::arg("t0") = 1.0, py::arg("a") = 0.0);

    m.def("write_csv", py::overload_cast<const std::string&, const std::vector<Layer>&>(&write_solution_csv));
    m.def("read_csv", py::overload_cast<const std::string&>(&read_solution_csv));
}
