#include "heatsym/symmetry.hpp"

#include <algorithm>
#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>
#include <cmath>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

using State = std::array<double, 5>;  // t, x, u, s, rho

constexpr double kFlowTol = 1e-14;
constexpr double kFlowLimit = 1e150;
constexpr int kMaxFlowSteps = 100000;

Node to_node(const State& y) { return {y[0], y[1], y[2], y[3], y[4]}; }
State to_state(const Node& n) { return {n.t, n.x, n.u, n.s, n.rho}; }

double eval(const SymmetryGenerator::Coefficient& c, const Node& n) { return c ? c(n) : 0.0; }

void check_state(const State& y) {
    for (double v : y)
        if (!std::isfinite(v) || std::abs(v) > kFlowLimit)
            fail(ErrorCode::FlowBlowup, "group flow left the representable range");
}

// Integrates dy/deps = X(y) from 0 to eps. RKF78 steps are controlled by
// step doubling, and each accepted step takes the Richardson combination.
State integrate(const SymmetryGenerator& gen, double eps, State y) {
    namespace odeint = boost::numeric::odeint;
    if (eps == 0.0) return y;
    auto rhs = [&gen](const State& in, State& out, double) {
        check_state(in);
        const Node n = to_node(in);
        out = {eval(gen.xi_t, n), eval(gen.xi_x, n), eval(gen.eta, n), eval(gen.xi_s, n),
               eval(gen.eta_rho, n)};
        check_state(out);
    };
    odeint::runge_kutta_fehlberg78<State> stepper;
    const double dir = eps > 0 ? 1.0 : -1.0;
    double done = 0.0;
    double dt = std::min(std::abs(eps), 0.05);
    for (int k = 0; k < kMaxFlowSteps; ++k) {
        const double left = std::abs(eps) - done;
        if (left <= 0.0) return y;
        dt = std::min(dt, left);
        State one = y;
        stepper.do_step(rhs, one, done * dir, dir * dt);
        State two = y;
        stepper.do_step(rhs, two, done * dir, dir * dt / 2);
        stepper.do_step(rhs, two, (done + dt / 2) * dir, dir * dt / 2);
        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i)
            err = std::max(err, std::abs(two[i] - one[i]) / (kFlowTol * std::max(1.0, std::abs(y[i]))));
        if (!std::isfinite(err)) fail(ErrorCode::FlowBlowup, "group flow diverged");
        if (err <= 1.0) {
            for (std::size_t i = 0; i < y.size(); ++i) y[i] = two[i] + (two[i] - one[i]) / 255.0;
            check_state(y);
            done += dt;
        }
        const double factor = err > 0 ? 0.9 * std::pow(err, -1.0 / 9.0) : 4.0;
        dt *= std::clamp(factor, 0.1, 4.0);
        if (dt < 1e-15 * std::max(1.0, std::abs(eps)))
            fail(ErrorCode::FlowBlowup, "group flow step size collapsed");
    }
    fail(ErrorCode::FlowBlowup, "group flow needed too many steps");
}

bool same_time(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)); }

}  // namespace

SymmetryGenerator SymmetryGenerator::make(std::string label,
                                          std::function<double(double, double, double)> xi_t,
                                          std::function<double(double, double, double)> xi_x,
                                          std::function<double(double, double, double)> eta) {
    auto wrap = [](std::function<double(double, double, double)> f) -> Coefficient {
        if (!f) return {};
        return [f = std::move(f)](const Node& n) { return f(n.t, n.x, n.u); };
    };
    SymmetryGenerator g;
    g.xi_t = wrap(std::move(xi_t));
    g.xi_x = wrap(std::move(xi_x));
    g.eta = wrap(std::move(eta));
    g.label = std::move(label);
    return g;
}

Point flow_point(const SymmetryGenerator& gen, double eps, Point p) {
    const Node n = flow_node(gen, eps, Node{p.t, p.x, p.u});
    return {n.t, n.x, n.u};
}

Node flow_node(const SymmetryGenerator& gen, double eps, const Node& n) {
    return to_node(integrate(gen, eps, to_state(n)));
}

Stencil flow_stencil(const SymmetryGenerator& gen, double eps, const Stencil& s) {
    Stencil out;
    for (std::size_t i = 0; i < 6; ++i) out.nodes[i] = flow_node(gen, eps, s.nodes[i]);
    const auto& n = out.nodes;
    if (!same_time(n[0].t, n[1].t) || !same_time(n[1].t, n[2].t) || !same_time(n[3].t, n[4].t) ||
        !same_time(n[4].t, n[5].t))
        fail(ErrorCode::LayerSkew, "the flow tilts a time layer of the stencil");
    return out;
}

MeshConditionReport check_mesh_conditions(const SymmetryGenerator& gen,
                                          std::span<const Stencil> samples, SpaceVariable space) {
    MeshConditionReport r;
    auto& d = r.max_defects;
    const auto& xi_space = space == SpaceVariable::S ? gen.xi_s : gen.xi_x;
    for (const Stencil& s : samples) {
        auto t_of = [&](Stencil::Slot k) { return eval(gen.xi_t, s[k]); };
        auto x_of = [&](Stencil::Slot k) { return eval(xi_space, s[k]); };
        const double tau = s.tau();
        const double h = space == SpaceVariable::S ? s.hs_plus() : s.h_plus();

        Node below = s[Stencil::Center];
        below.t -= tau;
        const double ut = t_of(Stencil::Hat) - 2.0 * t_of(Stencil::Center) + eval(gen.xi_t, below);
        d[0] = std::max(d[0], std::abs(ut));

        for (auto [m, c, p] : {std::array{Stencil::Minus, Stencil::Center, Stencil::Plus},
                               std::array{Stencil::HatMinus, Stencil::Hat, Stencil::HatPlus}}) {
            d[1] = std::max(d[1], std::abs(x_of(p) - 2.0 * x_of(c) + x_of(m)));
            d[3] = std::max({d[3], std::abs(t_of(p) - t_of(c)), std::abs(t_of(c) - t_of(m))});
        }

        const double orth = (t_of(Stencil::Plus) - t_of(Stencil::Center)) / h +
                            (x_of(Stencil::Hat) - x_of(Stencil::Center)) / tau;
        d[2] = std::max(d[2], std::abs(orth));
    }
    r.uniform_t = d[0] <= kMeshConditionTolerance;
    r.uniform_x = d[1] <= kMeshConditionTolerance;
    r.orthogonal = d[2] <= kMeshConditionTolerance;
    r.flat_layers = d[3] <= kMeshConditionTolerance;
    return r;
}

namespace {

// How far the image stencil is from the geometry the scheme is posed on.
// Moving schemes carry their geometry in the mesh equation.
double geometry_defect(Geometry g, const Stencil& s) {
    auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); };
    switch (g) {
    case Geometry::OrthogonalUniform:
    case Geometry::OrthogonalNonuniform: {
        const double h = std::max(std::abs(s.h_plus()), std::abs(s.h_minus()));
        double d = std::max({std::abs(s.dx()) / h, rel(s.h_plus_hat(), s.h_plus()),
                             rel(s.h_minus_hat(), s.h_minus())});
        if (g == Geometry::OrthogonalUniform) d = std::max(d, rel(s.h_plus(), s.h_minus()));
        return d;
    }
    case Geometry::Mass: {
        const double h = std::max(std::abs(s.hs_plus()), std::abs(s.hs_minus()));
        double d = 0.0;
        for (std::size_t k = 0; k < 3; ++k) d = std::max(d, std::abs(s.nodes[k + 3].s - s.nodes[k].s) / h);
        return d;
    }
    case Geometry::Moving: return 0.0;
    }
    return 0.0;
}

}  // namespace

double invariance_defect(SchemeId id, const SchemeParams& params, const SymmetryGenerator& gen,
                         const Stencil& s, double eps) {
    const Stencil image = flow_stencil(gen, eps, s);
    try {
        return std::max({residual_terms(id, params, image).normalized(),
                         mesh_residual_terms(id, params, image).normalized(),
                         geometry_defect(traits(id).geometry, image)});
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError) throw;
        fail(ErrorCode::InadmissibleImage, std::string("flowed stencil is inadmissible: ") + e.what());
    }
}

double invariant_directional_defect(const std::function<double(const Stencil&)>& expr,
                                    const SymmetryGenerator& gen, const Stencil& s) {
    auto central = [&](double h) {
        return (expr(flow_stencil(gen, h, s)) - expr(flow_stencil(gen, -h, s))) / (2.0 * h);
    };
    const double h = 1e-3;
    const double deriv = (4.0 * central(h / 2) - central(h)) / 3.0;
    return std::abs(deriv) / std::max(1.0, std::abs(expr(s)));
}

}  // namespace heatsym
