#include "heatsym/model_catalog.hpp"

#include <algorithm>
#include <cmath>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

using K = KFamily;
using Q = QFamily;
using MC = MeshClass;
using G = SymmetryGenerator;

const double kSqrt3 = std::sqrt(3.0);

G gen(std::string label, std::function<double(double, double, double)> xt,
      std::function<double(double, double, double)> xx,
      std::function<double(double, double, double)> eta) {
    return G::make(std::move(label), std::move(xt), std::move(xx), std::move(eta));
}

G dt() { return gen("X1", [](double, double, double) { return 1.0; }, {}, {}); }
G dx() { return gen("X2", {}, [](double, double, double) { return 1.0; }, {}); }

G dilation(std::string label, double a, double b, double c, bool log_u = false) {
    // a t d/dt + b x d/dx + c (u or 1) d/du
    return gen(std::move(label), [a](double t, double, double) { return a * t; },
               [b](double, double x, double) { return b * x; },
               [c, log_u](double, double, double u) { return log_u ? c : c * u; });
}

// e^{k t} d/dt + delta e^{k t} (u or 1) d/du
G time_exp(std::string label, double k, double delta, bool times_u) {
    return gen(std::move(label), [k](double t, double, double) { return std::exp(k * t); }, {},
               [k, delta, times_u](double t, double, double u) {
                   return delta * std::exp(k * t) * (times_u ? u : 1.0);
               });
}

G projective41(std::string label) {
    return gen(std::move(label), {}, [](double, double x, double) { return x * x; },
               [](double, double x, double u) { return -3.0 * x * u; });
}

// The pair spanning the x-dependent symmetries of K = u^{-4/3}, Q = alpha u^{-1/3}.
std::vector<G> critical_pair(double alpha) {
    if (alpha > 0) {
        const double k = 2.0 / kSqrt3;
        return {gen("X4", {}, [k](double, double x, double) { return std::exp(k * x); },
                    [k](double, double x, double u) { return -kSqrt3 * std::exp(k * x) * u; }),
                gen("X5", {}, [k](double, double x, double) { return std::exp(-k * x); },
                    [k](double, double x, double u) { return kSqrt3 * std::exp(-k * x) * u; })};
    }
    const double k = 2.0 / kSqrt3;
    return {gen("X4", {}, [k](double, double x, double) { return std::cos(k * x); },
                [k](double, double x, double u) { return kSqrt3 * std::sin(k * x) * u; }),
            gen("X5", {}, [k](double, double x, double) { return std::sin(k * x); },
                [k](double, double x, double u) { return -kSqrt3 * std::cos(k * x) * u; })};
}

std::vector<G> heat_algebra() {
    return {dt(),
            dx(),
            gen("X3", {}, [](double t, double, double) { return 2.0 * t; },
                [](double, double x, double u) { return -x * u; }),
            dilation("X4", 2.0, 1.0, 0.0),
            gen("X5", [](double t, double, double) { return 4.0 * t * t; },
                [](double t, double x, double) { return 4.0 * t * x; },
                [](double t, double x, double u) { return -(x * x + 2.0 * t) * u; }),
            gen("X6", {}, {}, [](double, double, double u) { return u; })};
}

// Heat algebra extended to (t, x, u, s, rho) for the density schemes.
std::vector<G> heat_algebra_density() {
    std::vector<G> g = heat_algebra();
    g[3].xi_s = [](const Node& n) { return n.s; };
    g[3].label = "X4";
    g[4].eta_rho = [](const Node& n) { return -4.0 * n.t * n.rho; };
    return g;
}

std::vector<G> mass_algebra(double sigma) {
    std::vector<G> g{dt(), dx(), gen("X3", {}, {}, {}), dilation("X4", 2.0, 1.0, 0.0),
                     dilation("X5", 0.0, sigma, 2.0)};
    g[2].xi_s = [](const Node&) { return 1.0; };
    g[3].xi_s = [](const Node& n) { return n.s; };
    g[4].xi_s = [sigma](const Node& n) { return (sigma + 2.0) * n.s; };
    return g;
}

std::vector<G> pick(const std::vector<G>& all, std::initializer_list<std::size_t> idx) {
    std::vector<G> out;
    for (std::size_t i : idx) out.push_back(all[i]);
    return out;
}

HeatModel model(K k, Q q) {
    HeatModel m;
    m.k_family = k;
    m.q_family = q;
    return m;
}

void bind(ModelEntry& e, SchemeId id, std::vector<MC> mesh, std::vector<G> generators,
          Coordinates c = Coordinates::Physical) {
    e.bindings.push_back({id, std::move(mesh), c, std::move(generators)});
    for (MC m : e.bindings.back().mesh)
        if (std::find(e.mesh_class.begin(), e.mesh_class.end(), m) == e.mesh_class.end())
            e.mesh_class.push_back(m);
}

}  // namespace

std::vector<SchemeId> ModelEntry::schemes() const {
    std::vector<SchemeId> ids;
    for (const auto& b : bindings) ids.push_back(b.id);
    return ids;
}

const SchemeBinding* ModelEntry::binding(SchemeId id) const {
    for (const auto& b : bindings)
        if (b.id == id) return &b;
    return nullptr;
}

ModelEntry lookup(const HeatModel& input) {
    const HeatModel m = canonical(input);
    ModelEntry e;
    e.model = m;
    auto& g = e.generators;
    const auto all = [&] { return g; };
    const double d = m.delta.value_or(0.0);

    switch (m.k_family) {
    case K::Arbitrary:
        g = {dt(), dx()};
        if (m.q_family == Q::Zero) {
            g.push_back(dilation("X3", 2.0, 1.0, 0.0));
            bind(e, SchemeId::SH12, {MC::OrthogonalUniform}, all());
        } else {
            bind(e, SchemeId::SH11, {MC::OrthogonalUniform}, all());
        }
        break;

    case K::Exponential:
        switch (m.q_family) {
        case Q::Zero:
            g = {dt(), dx(), dilation("X3", 2.0, 1.0, 0.0), dilation("X4", 1.0, 0.0, -1.0, true)};
            bind(e, SchemeId::SH21, {MC::OrthogonalUniform}, all());
            break;
        case Q::Constant:
            g = {dt(), dx(), time_exp("X3", -d, d, false), dilation("X4", 0.0, 1.0, 2.0, true)};
            bind(e, SchemeId::SH22, {MC::OrthogonalUniformLogTime}, all());
            e.transforms.push_back({TransformId::ch22(d), model(K::Exponential, Q::Zero)});
            break;
        case Q::ExpSource: {
            const double a = *m.alpha;
            g = {dt(), dx(), dilation("X3", 2.0 * a, a - 1.0, -2.0, true)};
            bind(e, SchemeId::SH23, {MC::OrthogonalUniform}, all());
            break;
        }
        default: {  // MixedExpConst
            g = {dt(), dx(), time_exp("X3", -d, d, false)};
            bind(e, SchemeId::SH24, {MC::OrthogonalUniformLogTime}, all());
            HeatModel target = model(K::Exponential, Q::ExpSource);
            target.alpha = 1.0;
            target.sign = m.sign;
            e.transforms.push_back({TransformId::ch22(d), target});
            break;
        }
        }
        break;

    case K::Power: {
        const double s = *m.sigma;
        HeatModel zero = model(K::Power, Q::Zero);
        zero.sigma = s;
        switch (m.q_family) {
        case Q::Zero:
            g = {dt(), dx(), dilation("X3", 2.0, 1.0, 0.0), dilation("X4", 0.0, s, 2.0)};
            bind(e, SchemeId::SH31, {MC::OrthogonalUniform}, all());
            bind(e, SchemeId::SH31A, {MC::MovingFlatLayers}, all());
            if (std::abs(s + 1.0) > 1e-12)
                bind(e, SchemeId::SH31N, {MC::MassCoordinate}, mass_algebra(s), Coordinates::Mass);
            break;
        case Q::LinearSource:
            g = {dt(), dx(), dilation("X3", 0.0, s, 2.0), time_exp("X4", -d * s, d, true)};
            bind(e, SchemeId::SH32, {MC::OrthogonalUniformLogTime}, all());
            e.transforms.push_back({TransformId::ch32(d, s), zero});
            break;
        case Q::PowerSource: {
            const double n = *m.n;
            g = {dt(), dx(), dilation("X3", 2.0 * (n - 1.0), n - s - 1.0, -2.0)};
            bind(e, SchemeId::SH33, {MC::OrthogonalUniform}, all());
            break;
        }
        default: {  // MixedPowerLinear
            g = {dt(), dx(), time_exp("X3", -d * s, d, true)};
            bind(e, SchemeId::SH34, {MC::OrthogonalUniformLogTime}, all());
            HeatModel target = model(K::Power, Q::PowerSource);
            target.sigma = s;
            target.n = s + 1.0;
            target.sign = m.sign;
            e.transforms.push_back({TransformId::ch32(d, s), target});
            break;
        }
        }
        break;
    }

    case K::PowerMinus43: {
        const double s = -4.0 / 3.0;
        const std::vector<MC> nonuniform{MC::OrthogonalNonuniformSpace};
        const std::vector<MC> nonuniform_log{MC::OrthogonalNonuniformSpace,
                                             MC::OrthogonalUniformLogTime};
        switch (m.q_family) {
        case Q::Zero:
            g = {dt(), dx(), dilation("X3", 2.0, 1.0, 0.0), dilation("X4", 0.0, 2.0, -3.0),
                 projective41("X5")};
            bind(e, SchemeId::SH41, nonuniform, all());
            break;
        case Q::LinearSource:
            g = {dt(), dx(), dilation("X3", 0.0, 2.0, -3.0), time_exp("X4", -d * s, d, true),
                 projective41("X5")};
            bind(e, SchemeId::SH42, nonuniform_log, all());
            e.transforms.push_back({TransformId::ch32(d, s), model(K::PowerMinus43, Q::Zero)});
            break;
        case Q::PowerSource: {
            const double n = *m.n;
            g = {dt(), dx(), dilation("X3", 2.0 * (n - 1.0), n + 1.0 / 3.0, -2.0)};
            bind(e, SchemeId::SH33, {MC::OrthogonalUniform}, all());
            break;
        }
        case Q::MixedCritical: {
            const double a = *m.alpha;
            g = {dt(), dx(), dilation("X3", 4.0 / 3.0, 0.0, 1.0)};
            for (auto& x : critical_pair(a)) g.push_back(x);
            bind(e, a > 0 ? SchemeId::SH44A : SchemeId::SH44B, nonuniform, all());
            e.transforms.push_back(
                {a > 0 ? TransformId::ch44a() : TransformId::ch44b(), model(K::PowerMinus43, Q::Zero)});
            break;
        }
        default: {  // MixedPowerLinear
            const double a = *m.alpha;
            g = {dt(), dx(), time_exp("X3", -d * s, d, true)};
            for (auto& x : critical_pair(a)) g.push_back(x);
            bind(e, a > 0 ? SchemeId::SH45A : SchemeId::SH45B, nonuniform_log, all());
            HeatModel lin = model(K::PowerMinus43, Q::LinearSource);
            lin.delta = d;
            e.transforms.push_back({a > 0 ? TransformId::ch44a() : TransformId::ch44b(), lin});
            HeatModel crit = model(K::PowerMinus43, Q::MixedCritical);
            crit.alpha = a;
            e.transforms.push_back({TransformId::ch32(d, s), crit});
            break;
        }
        }
        break;
    }

    case K::Linear:
        switch (m.q_family) {
        case Q::ExpSource:
            g = {dt(), dx(), dilation("X3", 2.0, 1.0, -2.0, true)};
            bind(e, SchemeId::SH51, {MC::OrthogonalUniform}, all());
            break;
        case Q::PowerSource: {
            const double n = *m.n;
            g = {dt(), dx(), dilation("X3", 2.0 * (n - 1.0), n - 1.0, -2.0)};
            bind(e, SchemeId::SH52, {MC::OrthogonalUniform}, all());
            break;
        }
        case Q::LogSource:
            g = {dt(), dx(),
                 gen("X3", {}, [d](double t, double, double) { return 2.0 * std::exp(d * t); },
                     [d](double t, double x, double u) { return -d * std::exp(d * t) * x * u; }),
                 gen("X4", {}, {}, [d](double t, double, double u) { return std::exp(d * t) * u; })};
            bind(e, SchemeId::SH53, {MC::MovingFlatLayers}, all());
            break;
        case Q::Zero:
            g = heat_algebra();
            bind(e, SchemeId::EQ55A, {MC::OrthogonalUniform}, pick(g, {0, 1, 3, 5}));
            bind(e, SchemeId::SH54E, {MC::MovingFlatLayers}, g);
            bind(e, SchemeId::SH54I, {MC::MovingFlatLayers}, g);
            bind(e, SchemeId::TS5G, {MC::MassCoordinate}, heat_algebra_density(), Coordinates::Mass);
            bind(e, SchemeId::TS5U, {MC::MassCoordinate}, heat_algebra_density(), Coordinates::Mass);
            break;
        case Q::LinearSource:
            // heat algebra conjugated by u -> u e^{delta t}
            g = {gen("X1", [](double, double, double) { return 1.0; }, {},
                     [d](double, double, double u) { return d * u; }),
                 dx(),
                 gen("X3", {}, [](double t, double, double) { return 2.0 * t; },
                     [](double, double x, double u) { return -x * u; }),
                 gen("X4", [](double t, double, double) { return 2.0 * t; },
                     [](double, double x, double) { return x; },
                     [d](double t, double, double u) { return 2.0 * d * t * u; }),
                 gen("X5", [](double t, double, double) { return 4.0 * t * t; },
                     [](double t, double x, double) { return 4.0 * t * x; },
                     [d](double t, double x, double u) {
                         return -(x * x + 2.0 * t - 4.0 * d * t * t) * u;
                     }),
                 gen("X6", {}, {}, [](double, double, double u) { return u; })};
            e.transforms.push_back({TransformId::ch55(d), model(K::Linear, Q::Zero)});
            break;
        default:  // Constant
            g = {gen("X1", [](double, double, double) { return 1.0; }, {},
                     [d](double, double, double) { return d; }),
                 dx(),
                 gen("X3", {}, [](double t, double, double) { return 2.0 * t; },
                     [d](double t, double x, double u) { return -x * (u - d * t); }),
                 gen("X4", [](double t, double, double) { return 2.0 * t; },
                     [](double, double x, double) { return x; },
                     [d](double t, double, double) { return 2.0 * d * t; }),
                 gen("X5", [](double t, double, double) { return 4.0 * t * t; },
                     [](double t, double x, double) { return 4.0 * t * x; },
                     [d](double t, double x, double u) {
                         return -(x * x + 2.0 * t) * (u - d * t) + 4.0 * d * t * t;
                     }),
                 gen("X6", {}, {}, [d](double t, double, double u) { return u - d * t; })};
            e.transforms.push_back({TransformId::ch56(d), model(K::Linear, Q::Zero)});
            break;
        }
        break;
    }
    return e;
}

std::vector<HeatModel> list_models() {
    auto with = [](K k, Q q, auto fill) {
        HeatModel m = model(k, q);
        fill(m);
        return m;
    };
    auto none = [](HeatModel&) {};
    return {
        with(K::Arbitrary, Q::Arbitrary, none),
        with(K::Arbitrary, Q::Zero, none),
        with(K::Exponential, Q::Zero, none),
        with(K::Exponential, Q::Constant, [](HeatModel& m) { m.delta = 1.0; }),
        with(K::Exponential, Q::ExpSource, [](HeatModel& m) { m.alpha = 2.0, m.sign = 1.0; }),
        with(K::Exponential, Q::MixedExpConst, [](HeatModel& m) { m.sign = 1.0, m.delta = 1.0; }),
        with(K::Power, Q::Zero, [](HeatModel& m) { m.sigma = 2.0; }),
        with(K::Power, Q::LinearSource, [](HeatModel& m) { m.sigma = 2.0, m.delta = 1.0; }),
        with(K::Power, Q::PowerSource, [](HeatModel& m) { m.sigma = 2.0, m.n = 3.0, m.sign = 1.0; }),
        with(K::Power, Q::MixedPowerLinear,
             [](HeatModel& m) { m.sigma = 2.0, m.sign = 1.0, m.delta = 1.0; }),
        with(K::PowerMinus43, Q::Zero, none),
        with(K::PowerMinus43, Q::LinearSource, [](HeatModel& m) { m.delta = 1.0; }),
        with(K::PowerMinus43, Q::PowerSource, [](HeatModel& m) { m.n = 2.0, m.sign = 1.0; }),
        with(K::PowerMinus43, Q::MixedCritical, [](HeatModel& m) { m.alpha = 1.0; }),
        with(K::PowerMinus43, Q::MixedCritical, [](HeatModel& m) { m.alpha = -1.0; }),
        with(K::PowerMinus43, Q::MixedPowerLinear, [](HeatModel& m) { m.alpha = 1.0, m.delta = 1.0; }),
        with(K::PowerMinus43, Q::MixedPowerLinear, [](HeatModel& m) { m.alpha = -1.0, m.delta = 1.0; }),
        with(K::Linear, Q::ExpSource, [](HeatModel& m) { m.sign = 1.0; }),
        with(K::Linear, Q::PowerSource, [](HeatModel& m) { m.n = 2.0, m.sign = 1.0; }),
        with(K::Linear, Q::LogSource, [](HeatModel& m) { m.delta = 1.0; }),
        with(K::Linear, Q::Zero, none),
        with(K::Linear, Q::LinearSource, [](HeatModel& m) { m.delta = 1.0; }),
        with(K::Linear, Q::Constant, [](HeatModel& m) { m.delta = 1.0; }),
    };
}

HeatModel representative_model(SchemeId id) {
    for (const HeatModel& m : list_models()) {
        const ModelEntry e = lookup(m);
        if (e.binding(id)) return e.model;
    }
    fail(ErrorCode::UnknownCase, "scheme has no model");
}

MeshRequirements requirements(const std::vector<MeshClass>& classes) {
    MeshRequirements r;
    for (MC c : classes) {
        switch (c) {
        case MC::OrthogonalUniformLogTime: r.uniform_t = false; break;
        case MC::OrthogonalNonuniformSpace: r.uniform_x = false; break;
        case MC::MovingFlatLayers: r.orthogonal = r.uniform_x = false; break;
        case MC::OrthogonalUniform:
        case MC::MassCoordinate: break;
        }
    }
    return r;
}

}  // namespace heatsym
