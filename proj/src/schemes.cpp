#include "heatsym/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "heatsym/errors.hpp"
#include "newton.hpp"

namespace heatsym {

namespace {

constexpr double kOverflow = 1e150;
constexpr double kMinus43 = -4.0 / 3.0;
const double kSqrt3 = std::sqrt(3.0);

using K = KFamily;
using Q = QFamily;

double normalized_abs(double value, double scale) {
    if (scale > 0) return std::abs(value) / scale;
    return std::abs(value);
}

/// Running sum that remembers its largest term.
struct Terms {
    double sum = 0.0;
    double scale = 0.0;

    void add(double v) {
        sum += v;
        scale = std::max(scale, std::abs(v));
    }
    void sub(double v) { add(-v); }
    Residual done() const { return {sum, scale}; }
};

double positive(double u, const char* what) {
    if (!(u > 0)) fail(ErrorCode::DomainError, std::string(what) + " must be positive");
    return u;
}

double step_length(double h) {
    if (!(h > 0)) fail(ErrorCode::DomainError, "step lengths must be positive");
    return h;
}

double param(const std::optional<double>& v, const char* name) {
    if (!v) fail(ErrorCode::InvalidParameter, std::string("missing parameter ") + name);
    return *v;
}

double delta_of(const SchemeParams& p) { return param(p.model.delta, "delta"); }
double sign_of(const SchemeParams& p) { return param(p.model.sign, "sign"); }
double sigma_of(const SchemeParams& p) {
    if (p.model.k_family == K::PowerMinus43) return kMinus43;
    return param(p.model.sigma, "sigma");
}

// ---------------------------------------------------------------------------
// Orthogonal explicit schemes: T(u_hat) = sum of right-hand terms.

enum class TimePart { Plain, ExpShift, LogPower };

TimePart time_part(SchemeId id) {
    switch (id) {
    case SchemeId::SH22:
    case SchemeId::SH24: return TimePart::ExpShift;
    case SchemeId::SH32:
    case SchemeId::SH34:
    case SchemeId::SH42:
    case SchemeId::SH45A:
    case SchemeId::SH45B: return TimePart::LogPower;
    default: return TimePart::Plain;
    }
}

// (2/(h+ + h-)) (K(mean+) u_x - K(mean-) u_xbar), split in its two fluxes.
template <class KFn>
void add_flux(Terms& t, const Stencil& s, KFn kfn) {
    const double hp = step_length(s.h_plus());
    const double hm = step_length(s.h_minus());
    const double w = 2.0 / (hp + hm);
    const double u = s.u(), up = s.u_plus(), um = s.u_minus();
    t.add(w * kfn(0.5 * (up + u)) * (up - u) / hp);
    t.sub(w * kfn(0.5 * (u + um)) * (u - um) / hm);
}

double power_mean(double m, double sigma) { return std::pow(positive(m, "u"), sigma); }

// -3 (h+ + h-)/(2 h+ h-) ((f+ - f)/h+ - (f - f-)/h-), f = u^{-1/3}
void add_critical_flux(Terms& t, const Stencil& s) {
    const double hp = step_length(s.h_plus());
    const double hm = step_length(s.h_minus());
    const double f = std::cbrt(1.0 / positive(s.u(), "u"));
    const double fp = std::cbrt(1.0 / positive(s.u_plus(), "u"));
    const double fm = std::cbrt(1.0 / positive(s.u_minus(), "u"));
    const double c = -1.5 * (hp + hm) / (hp * hm);
    t.add(c * (fp - f) / hp);
    t.sub(c * (f - fm) / hm);
}

// Hyperbolic (alpha = +1) or trigonometric (alpha = -1) variant of the above.
void add_curved_flux(Terms& t, const Stencil& s, bool hyperbolic) {
    const double hp = step_length(s.h_plus()) / kSqrt3;
    const double hm = step_length(s.h_minus()) / kSqrt3;
    const double f = std::cbrt(1.0 / positive(s.u(), "u"));
    const double fp = std::cbrt(1.0 / positive(s.u_plus(), "u"));
    const double fm = std::cbrt(1.0 / positive(s.u_minus(), "u"));
    double cp, cm, sp, sm;
    if (hyperbolic) {
        cp = std::cosh(hp), cm = std::cosh(hm), sp = std::sinh(hp), sm = std::sinh(hm);
    } else {
        cp = std::cos(hp), cm = std::cos(hm), sp = std::sin(hp), sm = std::sin(hm);
        if (!(sp > 0) || !(sm > 0) || !(cp > 0) || !(cm > 0))
            fail(ErrorCode::DomainError, "steps must stay below sqrt(3) pi/2");
    }
    const double c = -0.5 * (cp / sp + cm / sm);
    t.add(c * (fp - f * cp) / sp);
    t.sub(c * (f * cm - fm) / sm);
}

Terms orthogonal_rhs(SchemeId id, const SchemeParams& p, const Stencil& s) {
    Terms t;
    const double u = s.u();
    switch (id) {
    case SchemeId::SH11:
        add_flux(t, s, p.K_fn);
        t.add(p.Q_fn(u));
        break;
    case SchemeId::SH12: add_flux(t, s, p.K_fn); break;
    case SchemeId::SH21:
    case SchemeId::SH22: add_flux(t, s, [](double m) { return std::exp(m); }); break;
    case SchemeId::SH23:
        add_flux(t, s, [](double m) { return std::exp(m); });
        t.add(sign_of(p) * std::exp(param(p.model.alpha, "alpha") * u));
        break;
    case SchemeId::SH24:
        add_flux(t, s, [](double m) { return std::exp(m); });
        t.add(sign_of(p) * std::exp(u));
        break;
    case SchemeId::SH31:
    case SchemeId::SH32:
    case SchemeId::SH33:
    case SchemeId::SH34: {
        const double sigma = sigma_of(p);
        add_flux(t, s, [sigma](double m) { return power_mean(m, sigma); });
        positive(u, "u");
        if (id == SchemeId::SH33) t.add(sign_of(p) * std::pow(u, param(p.model.n, "n")));
        if (id == SchemeId::SH34) t.add(sign_of(p) * std::pow(u, sigma + 1.0));
        break;
    }
    case SchemeId::SH41:
    case SchemeId::SH42: add_critical_flux(t, s); break;
    case SchemeId::SH44A:
    case SchemeId::SH45A: add_curved_flux(t, s, true); break;
    case SchemeId::SH44B:
    case SchemeId::SH45B: add_curved_flux(t, s, false); break;
    case SchemeId::SH51:
        add_flux(t, s, [](double) { return 1.0; });
        t.add(sign_of(p) * std::exp(u));
        break;
    case SchemeId::SH52:
        add_flux(t, s, [](double) { return 1.0; });
        t.add(sign_of(p) * std::pow(positive(u, "u"), param(p.model.n, "n")));
        break;
    case SchemeId::EQ55A: add_flux(t, s, [](double) { return 1.0; }); break;
    default: fail(ErrorCode::InvalidParameter, "not an orthogonal scheme");
    }
    return t;
}

// Left-hand time difference of the orthogonal schemes.
double time_term(SchemeId id, const SchemeParams& p, double u, double u_hat, double tau) {
    switch (time_part(id)) {
    case TimePart::Plain: return (u_hat - u) / tau;
    case TimePart::ExpShift: {
        const double d = delta_of(p);
        return (d * (u_hat - u) - tau) / std::expm1(d * tau);
    }
    case TimePart::LogPower: {
        const double d = delta_of(p);
        const double sigma = sigma_of(p);
        positive(u, "u");
        positive(u_hat, "u_hat");
        return sigma * u / std::expm1(d * sigma * tau) * (d * std::log(u_hat / u) - tau);
    }
    }
    return 0.0;
}

// Inverse of time_term for a given right-hand side R.
double solve_time_term(SchemeId id, const SchemeParams& p, double u, double R, double tau) {
    switch (time_part(id)) {
    case TimePart::Plain: return u + tau * R;
    case TimePart::ExpShift: {
        const double d = delta_of(p);
        return u + d * (tau + std::expm1(d * tau) * R);
    }
    case TimePart::LogPower: {
        const double d = delta_of(p);
        const double sigma = sigma_of(p);
        const double E = std::expm1(d * sigma * tau);
        return u * std::exp(d * (tau + E * R / (sigma * positive(u, "u"))));
    }
    }
    return u;
}

// ---------------------------------------------------------------------------
// Moving and mass-coordinate schemes.

double log_ratio(double a, double b) { return std::log(positive(a, "u") / positive(b, "u")); }

double drift_sh31a(const SchemeParams& p, const Stencil& s) {
    const double sigma = sigma_of(p);
    const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
    const double w = std::pow(positive(s.u(), "u"), sigma);
    const double wp = std::pow(positive(s.u_plus(), "u"), sigma);
    const double wm = std::pow(positive(s.u_minus(), "u"), sigma);
    return -s.tau() / (2.0 * sigma) * ((wp - w) / hp + (w - wm) / hm);
}

double drift_sh53(const SchemeParams& p, const Stencil& s) {
    const double d = delta_of(p);
    const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
    const double lx = log_ratio(s.u_plus(), s.u()) / hp;
    const double lxb = log_ratio(s.u(), s.u_minus()) / hm;
    return -2.0 * d * std::expm1(d * s.tau()) * (hm / (hp + hm) * lx + hp / (hp + hm) * lxb);
}

double drift_moving_heat(double tau, double hp, double hm, double up, double u, double um) {
    step_length(hp), step_length(hm);
    return 2.0 * tau / (hp + hm) * (-(hm / hp) * log_ratio(up, u) + (hp / hm) * log_ratio(um, u));
}

double drift_sh31n(const SchemeParams& p, const Stencil& s) {
    const double sigma = sigma_of(p);
    const double a = p.weight_alpha;
    const double hs = step_length(s.hs_plus()) + step_length(s.hs_minus());
    const double e = sigma + 1.0;
    auto w = [e](double v) { return std::pow(positive(v, "u"), e); };
    double lower = 0.0, upper = 0.0;
    if (a > 0) lower = w(s.u_plus()) - w(s.u_minus());
    if (a < 1) upper = w(s.u_hat_plus()) - w(s.u_hat_minus());
    return -s.tau() / e * (a * lower + (1.0 - a) * upper) / hs;
}

double drift_ts5(SchemeId id, const Stencil& s) {
    const double hsp = step_length(s.hs_plus()), hsm = step_length(s.hs_minus());
    const double rho = positive(s.rho(), "rho"), rhom = positive(s.rho_minus(), "rho");
    const double lp = log_ratio(s.u_plus(), s.u()), lm = log_ratio(s.u_minus(), s.u());
    if (id == SchemeId::TS5U) {
        const double hs = 0.5 * (hsp + hsm);
        return 2.0 * s.tau() * (-rho * rho * lp + rhom * rhom * lm) / (hs * (rho + rhom));
    }
    return 2.0 * s.tau() * (-(hsm / hsp) * (rho / rhom) * lp + (hsp / hsm) * (rhom / rho) * lm) /
           (hsp / rho + hsm / rhom);
}

Residual moving_u_residual(SchemeId id, const SchemeParams& p, const Stencil& s) {
    Terms t;
    const double tau = s.tau();
    if (!(tau > 0)) fail(ErrorCode::DomainError, "tau must be positive");
    const double dx = s.dx();
    switch (id) {
    case SchemeId::SH31A: {
        const double hp = step_length(s.h_plus()), hhp = step_length(s.h_plus_hat());
        t.add(0.5 * (s.u_hat() + s.u_hat_plus()) * hhp);
        t.sub(0.5 * (s.u() + s.u_plus()) * hp);
        break;
    }
    case SchemeId::SH53: {
        const double d = delta_of(p);
        const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
        const double lu = std::log(positive(s.u(), "u"));
        const double luh = std::log(positive(s.u_hat(), "u_hat"));
        const double lx = log_ratio(s.u_plus(), s.u()) / hp;
        const double lxb = log_ratio(s.u(), s.u_minus()) / hm;
        const double c = -4.0 * std::expm1(-d * tau);  // 4 (1 - e^{-delta tau})
        const double E = std::expm1(d * tau);
        t.add(d * dx * dx);
        t.add(c * luh);
        t.sub(c * std::exp(d * tau) * lu);
        t.sub(8.0 / d * E * E / (hp + hm) * lx);
        t.add(8.0 / d * E * E / (hp + hm) * lxb);
        break;
    }
    case SchemeId::SH54E: {
        const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
        const double r = positive(s.u(), "u") / positive(s.u_hat(), "u_hat");
        const double c = 4.0 * tau / (hp + hm);
        t.add(r * r * std::exp(-0.5 * dx * dx / tau));
        t.sub(1.0);
        t.add(c / hp * log_ratio(s.u_plus(), s.u()));
        t.add(c / hm * log_ratio(s.u_minus(), s.u()));
        break;
    }
    case SchemeId::SH54I: {
        const double hp = step_length(s.h_plus_hat()), hm = step_length(s.h_minus_hat());
        const double r = positive(s.u_hat(), "u_hat") / positive(s.u(), "u");
        const double c = 4.0 * tau / (hp + hm);
        t.add(r * r * std::exp(0.5 * dx * dx / tau));
        t.sub(1.0);
        t.sub(c / hp * log_ratio(s.u_hat_plus(), s.u_hat()));
        t.sub(c / hm * log_ratio(s.u_hat_minus(), s.u_hat()));
        break;
    }
    case SchemeId::SH31N: {
        const double sigma = sigma_of(p);
        const double e = sigma + 1.0;
        const double a = p.weight_alpha;
        const double hsp = step_length(s.hs_plus()), hsm = step_length(s.hs_minus());
        const double w2 = 2.0 / (hsp + hsm);
        auto w = [e](double v) { return std::pow(positive(v, "u"), e); };
        // Differences are split into their parts so that the scale reflects
        // the cancellation in flat regions.
        t.add(1.0 / (positive(s.u_hat(), "u_hat") * tau));
        t.sub(1.0 / (positive(s.u(), "u") * tau));
        auto flux = [&](double c, double up, double u, double um) {
            t.add(c * w(up) / hsp);
            t.sub(c * w(u) * (1.0 / hsp + 1.0 / hsm));
            t.add(c * w(um) / hsm);
        };
        if (a > 0) flux(a / e * w2, s.u_plus(), s.u(), s.u_minus());
        if (a < 1) flux((1.0 - a) / e * w2, s.u_hat_plus(), s.u_hat(), s.u_hat_minus());
        break;
    }
    case SchemeId::TS5G:
    case SchemeId::TS5U: {
        const double hsp = step_length(s.hs_plus()), hsm = step_length(s.hs_minus());
        const double rho = positive(s.rho(), "rho"), rhom = positive(s.rho_minus(), "rho");
        const double r = positive(s.u(), "u") / positive(s.u_hat(), "u_hat");
        const double lp = log_ratio(s.u_plus(), s.u()), lm = log_ratio(s.u_minus(), s.u());
        t.add(r * r * std::exp(-0.5 * dx * dx / tau));
        t.sub(1.0);
        if (id == SchemeId::TS5U) {
            const double hs = 0.5 * (hsp + hsm);
            const double c = 4.0 * tau * rho * rhom / (hs * hs * (rho + rhom));
            t.add(c * rho * lp);
            t.add(c * rhom * lm);
        } else {
            const double c = 4.0 * tau / (hsp / rho + hsm / rhom);
            t.add(c * rho / hsp * lp);
            t.add(c * rhom / hsm * lm);
        }
        break;
    }
    default: fail(ErrorCode::InvalidParameter, "not a moving scheme");
    }
    return t.done();
}

bool needs_positive_u(SchemeId id) {
    switch (id) {
    case SchemeId::SH11:
    case SchemeId::SH12:
    case SchemeId::SH21:
    case SchemeId::SH22:
    case SchemeId::SH23:
    case SchemeId::SH24:
    case SchemeId::SH51:
    case SchemeId::EQ55A: return false;
    default: return true;
    }
}

// Nodes of a stencil from three consecutive entries of two layers.
Node layer_node(const Layer& l, std::size_t i) {
    Node n;
    n.t = l.t;
    n.x = l.x[i];
    n.u = l.u[i];
    if (l.s) n.s = (*l.s)[i];
    if (l.rho) n.rho = (*l.rho)[i];
    return n;
}

double extrapolate_drift(const std::vector<double>& x, const std::vector<double>& dx,
                         std::size_t edge, std::size_t near, std::size_t far) {
    return dx[near] + (dx[near] - dx[far]) * (x[edge] - x[near]) / (x[near] - x[far]);
}

double boundary_value(const SchemeParams& p, const Layer& lower, const Layer& upper,
                      std::size_t edge, std::size_t inner) {
    if (p.boundary == BoundaryPolicy::CopyEnds) return upper.u[inner];
    if (p.boundary_value) return p.boundary_value(upper.t, upper.x[edge]);
    return lower.u[edge];
}

void guard_layer(SchemeId id, const Layer& l) {
    const bool pos = needs_positive_u(id);
    for (std::size_t i = 0; i < l.size(); ++i) {
        const double v = l.u[i];
        if (!std::isfinite(v) || std::abs(v) >= kOverflow || (pos && !(v > 0)))
            fail(ErrorCode::StabilityBreach,
                 "u left the admissible range at node " + std::to_string(i) + " (t = " +
                     std::to_string(l.t) + "); reduce tau");
    }
    for (std::size_t i = 0; i + 1 < l.size(); ++i)
        if (!(l.x[i + 1] > l.x[i]))
            fail(ErrorCode::StabilityBreach,
                 "mesh nodes crossed at index " + std::to_string(i) + "; reduce tau");
    if (l.rho)
        for (double r : *l.rho)
            if (!(r > 0) || !std::isfinite(r))
                fail(ErrorCode::StabilityBreach, "density became nonpositive; reduce tau");
}

void require_mass_grid(const Layer& l, bool with_rho) {
    if (!l.s) fail(ErrorCode::MissingMassGrid, "mass-coordinate scheme needs s on the layer");
    if (with_rho && !l.rho)
        fail(ErrorCode::MissingMassGrid, "density scheme needs rho on the layer");
}

// u-equation of the moving schemes solved for u_hat at the center of `s`
// (drift already applied to the upper nodes).
double explicit_moving_u(SchemeId id, const SchemeParams& p, const Stencil& s) {
    const double tau = s.tau();
    const double dx = s.dx();
    switch (id) {
    case SchemeId::SH53: {
        const double d = delta_of(p);
        const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
        const double lu = std::log(positive(s.u(), "u"));
        const double lx = log_ratio(s.u_plus(), s.u()) / hp;
        const double lxb = log_ratio(s.u(), s.u_minus()) / hm;
        const double E = std::expm1(d * tau);
        const double c = -4.0 * std::expm1(-d * tau);
        const double rhs = 8.0 / d * E * E / (hp + hm) * (lx - lxb) - d * dx * dx;
        return std::exp(std::exp(d * tau) * lu + rhs / c);
    }
    case SchemeId::SH54E: {
        const double hp = step_length(s.h_plus()), hm = step_length(s.h_minus());
        const double rhs = 1.0 - 4.0 * tau / (hp + hm) *
                                     (log_ratio(s.u_plus(), s.u()) / hp +
                                      log_ratio(s.u_minus(), s.u()) / hm);
        if (!(rhs > 0))
            fail(ErrorCode::StabilityBreach, "explicit moving-mesh step has no real solution; reduce tau");
        return s.u() * std::exp(-0.25 * dx * dx / tau) / std::sqrt(rhs);
    }
    case SchemeId::TS5G:
    case SchemeId::TS5U: {
        const double hsp = step_length(s.hs_plus()), hsm = step_length(s.hs_minus());
        const double rho = s.rho(), rhom = s.rho_minus();
        const double lp = log_ratio(s.u_plus(), s.u()), lm = log_ratio(s.u_minus(), s.u());
        double corr;
        if (id == SchemeId::TS5U) {
            const double hs = 0.5 * (hsp + hsm);
            corr = 4.0 * tau * rho * rhom / (hs * hs * (rho + rhom)) * (rho * lp + rhom * lm);
        } else {
            corr = 4.0 * tau * (rho / hsp * lp + rhom / hsm * lm) / (hsp / rho + hsm / rhom);
        }
        const double rhs = 1.0 - corr;
        if (!(rhs > 0))
            fail(ErrorCode::StabilityBreach, "explicit moving-mesh step has no real solution; reduce tau");
        return s.u() * std::exp(-0.25 * dx * dx / tau) / std::sqrt(rhs);
    }
    case SchemeId::SH31N: {
        // weight_alpha = 1: 1/u_hat = 1/u - tau/(sigma+1) D^2 u^{sigma+1}
        const double e = sigma_of(p) + 1.0;
        const double hsp = step_length(s.hs_plus()), hsm = step_length(s.hs_minus());
        auto w = [e](double v) { return std::pow(positive(v, "u"), e); };
        const double d2 = 2.0 / (hsp + hsm) *
                          ((w(s.u_plus()) - w(s.u())) / hsp - (w(s.u()) - w(s.u_minus())) / hsm);
        const double inv = 1.0 / positive(s.u(), "u") - tau / e * d2;
        if (!(inv > 0)) fail(ErrorCode::StabilityBreach, "mass-coordinate step lost positivity; reduce tau");
        return 1.0 / inv;
    }
    default: fail(ErrorCode::InvalidParameter, "no explicit update for this scheme");
    }
}

void shift_upper(Stencil& s, double dx) {
    const double move = s.x() + dx - s[Stencil::Hat].x;
    for (auto slot : {Stencil::HatMinus, Stencil::Hat, Stencil::HatPlus}) s[slot].x += move;
}

}  // namespace

double Residual::normalized() const { return normalized_abs(value, scale); }

SchemeTraits traits(SchemeId id) {
    switch (id) {
    case SchemeId::SH22:
    case SchemeId::SH24:
    case SchemeId::SH32:
    case SchemeId::SH34: return {Geometry::OrthogonalUniform, false, true};
    case SchemeId::SH41:
    case SchemeId::SH44A:
    case SchemeId::SH44B: return {Geometry::OrthogonalNonuniform, false, false};
    case SchemeId::SH42:
    case SchemeId::SH45A:
    case SchemeId::SH45B: return {Geometry::OrthogonalNonuniform, false, true};
    case SchemeId::SH31A:
    case SchemeId::SH53:
    case SchemeId::SH54E: return {Geometry::Moving, false, false};
    case SchemeId::SH54I: return {Geometry::Moving, true, false};
    case SchemeId::SH31N: return {Geometry::Mass, true, false};
    case SchemeId::TS5G:
    case SchemeId::TS5U: return {Geometry::Mass, false, false};
    default: return {Geometry::OrthogonalUniform, false, false};
    }
}

void validate(SchemeId id, const SchemeParams& p) {
    const HeatModel m = canonical(p.model);
    auto want = [&](K k, Q q) {
        if (m.k_family != k || m.q_family != q)
            fail(ErrorCode::InvalidParameter,
                 std::string(to_string(id)) + " does not apply to " + model_key(m));
    };
    switch (id) {
    case SchemeId::SH11: want(K::Arbitrary, Q::Arbitrary); break;
    case SchemeId::SH12: want(K::Arbitrary, Q::Zero); break;
    case SchemeId::SH21: want(K::Exponential, Q::Zero); break;
    case SchemeId::SH22: want(K::Exponential, Q::Constant); break;
    case SchemeId::SH23: want(K::Exponential, Q::ExpSource); break;
    case SchemeId::SH24: want(K::Exponential, Q::MixedExpConst); break;
    case SchemeId::SH31:
    case SchemeId::SH31A:
    case SchemeId::SH31N: want(K::Power, Q::Zero); break;
    case SchemeId::SH32: want(K::Power, Q::LinearSource); break;
    case SchemeId::SH33:
        if (m.k_family != K::PowerMinus43) want(K::Power, Q::PowerSource);
        else want(K::PowerMinus43, Q::PowerSource);
        break;
    case SchemeId::SH34: want(K::Power, Q::MixedPowerLinear); break;
    case SchemeId::SH41: want(K::PowerMinus43, Q::Zero); break;
    case SchemeId::SH42: want(K::PowerMinus43, Q::LinearSource); break;
    case SchemeId::SH44A:
    case SchemeId::SH44B: want(K::PowerMinus43, Q::MixedCritical); break;
    case SchemeId::SH45A:
    case SchemeId::SH45B: want(K::PowerMinus43, Q::MixedPowerLinear); break;
    case SchemeId::SH51: want(K::Linear, Q::ExpSource); break;
    case SchemeId::SH52: want(K::Linear, Q::PowerSource); break;
    case SchemeId::SH53: want(K::Linear, Q::LogSource); break;
    case SchemeId::SH54E:
    case SchemeId::SH54I:
    case SchemeId::EQ55A:
    case SchemeId::TS5G:
    case SchemeId::TS5U: want(K::Linear, Q::Zero); break;
    }
    if (id == SchemeId::SH44A || id == SchemeId::SH45A || id == SchemeId::SH44B ||
        id == SchemeId::SH45B) {
        const bool plus = id == SchemeId::SH44A || id == SchemeId::SH45A;
        if ((*m.alpha > 0) != plus)
            fail(ErrorCode::InvalidParameter,
                 std::string(to_string(id)) + " needs alpha = " + (plus ? "+1" : "-1"));
    }
    const bool arbitrary = m.k_family == K::Arbitrary;
    if (arbitrary != static_cast<bool>(p.K_fn))
        fail(ErrorCode::InvalidParameter, "K_fn must be given exactly for arbitrary K");
    if (id == SchemeId::SH11 && !p.Q_fn)
        fail(ErrorCode::InvalidParameter, "SH11 needs Q_fn");
    if (!(p.weight_alpha >= 0.0 && p.weight_alpha <= 1.0))
        fail(ErrorCode::InvalidParameter, "weight_alpha must lie in [0, 1]");
    if (id == SchemeId::SH31N && std::abs(*m.sigma + 1.0) < 1e-12)
        fail(ErrorCode::InvalidParameter, "the mass-coordinate scheme needs sigma != -1");
}

Residual residual_terms(SchemeId id, const SchemeParams& p, const Stencil& s) {
    const Geometry g = traits(id).geometry;
    if (g == Geometry::Moving || g == Geometry::Mass) return moving_u_residual(id, p, s);
    const double tau = s.tau();
    if (!(tau > 0)) fail(ErrorCode::DomainError, "tau must be positive");
    Terms rhs = orthogonal_rhs(id, p, s);
    const double lhs = time_term(id, p, s.u(), s.u_hat(), tau);
    return {lhs - rhs.sum, std::max(std::abs(lhs), rhs.scale)};
}

double residual(SchemeId id, const SchemeParams& p, const Stencil& s) {
    return residual_terms(id, p, s).value;
}

double mesh_drift(SchemeId id, const SchemeParams& p, const Stencil& s) {
    switch (id) {
    case SchemeId::SH31A: return drift_sh31a(p, s);
    case SchemeId::SH53: return drift_sh53(p, s);
    case SchemeId::SH54E:
        return drift_moving_heat(s.tau(), s.h_plus(), s.h_minus(), s.u_plus(), s.u(), s.u_minus());
    case SchemeId::SH54I:
        return drift_moving_heat(s.tau(), s.h_plus_hat(), s.h_minus_hat(), s.u_hat_plus(),
                                 s.u_hat(), s.u_hat_minus());
    case SchemeId::SH31N: return drift_sh31n(p, s);
    case SchemeId::TS5G:
    case SchemeId::TS5U: return drift_ts5(id, s);
    default: return 0.0;
    }
}

Residual mesh_residual_terms(SchemeId id, const SchemeParams& p, const Stencil& s) {
    const Geometry g = traits(id).geometry;
    if (g != Geometry::Moving && g != Geometry::Mass) return {};
    const double drift = mesh_drift(id, p, s);
    const double dx = s.dx();
    Residual r{dx - drift, std::max(std::abs(dx), std::abs(drift))};
    if (id == SchemeId::SH31N) {
        // the drift is a difference of fluxes; scale by the fluxes themselves
        const double e = sigma_of(p) + 1.0;
        const double a = p.weight_alpha;
        auto w = [e](double v) { return std::pow(v, e); };
        const double flux = a * (w(s.u_plus()) + w(s.u_minus())) +
                            (1.0 - a) * (w(s.u_hat_plus()) + w(s.u_hat_minus()));
        r.scale = std::max(r.scale, s.tau() / e * flux / (s.hs_plus() + s.hs_minus()));
    }
    if (id == SchemeId::TS5G || id == SchemeId::TS5U) {
        // rho_hat h_x_hat+ = rho h_x+
        const double lhs = s.rho_hat() * step_length(s.h_plus_hat());
        const double rhs = s.rho() * step_length(s.h_plus());
        const Residual d{lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))};
        if (d.normalized() > r.normalized()) r = d;
    }
    return r;
}

double mesh_residual(SchemeId id, const SchemeParams& p, const Stencil& s) {
    return mesh_residual_terms(id, p, s).value;
}

void complete_stencil(SchemeId id, const SchemeParams& p, Stencil& s) {
    const Geometry g = traits(id).geometry;
    if (g == Geometry::OrthogonalUniform || g == Geometry::OrthogonalNonuniform) {
        const Terms rhs = orthogonal_rhs(id, p, s);
        s[Stencil::Hat].u = solve_time_term(id, p, s.u(), rhs.sum, s.tau());
        return;
    }
    switch (id) {
    case SchemeId::SH31A: {
        shift_upper(s, mesh_drift(id, p, s));
        s[Stencil::Hat].u =
            (s.u() + s.u_plus()) * s.h_plus() / step_length(s.h_plus_hat()) - s.u_hat_plus();
        return;
    }
    case SchemeId::SH53:
    case SchemeId::SH54E:
        shift_upper(s, mesh_drift(id, p, s));
        s[Stencil::Hat].u = explicit_moving_u(id, p, s);
        return;
    case SchemeId::TS5G:
    case SchemeId::TS5U:
        shift_upper(s, mesh_drift(id, p, s));
        s[Stencil::Hat].u = explicit_moving_u(id, p, s);
        s[Stencil::Hat].rho = s.rho() * s.h_plus() / step_length(s.h_plus_hat());
        return;
    case SchemeId::SH31N: {
        shift_upper(s, mesh_drift(id, p, s));
        if (p.weight_alpha == 1.0) {
            s[Stencil::Hat].u = explicit_moving_u(id, p, s);
            return;
        }
        const double uh = detail::solve_scalar(
            [&](double v) {
                Stencil t = s;
                t[Stencil::Hat].u = v;
                return residual_terms(id, p, t);
            },
            s.u());
        s[Stencil::Hat].u = uh;
        return;
    }
    case SchemeId::SH54I: {
        const double uh = detail::solve_scalar(
            [&](double v) {
                Stencil t = s;
                t[Stencil::Hat].u = v;
                shift_upper(t, mesh_drift(id, p, t));
                return residual_terms(id, p, t);
            },
            s.u());
        s[Stencil::Hat].u = uh;
        shift_upper(s, mesh_drift(id, p, s));
        return;
    }
    default: break;
    }
    fail(ErrorCode::InvalidParameter, "cannot complete stencil for this scheme");
}

Stencil stencil_at(const Layer& lower, const Layer& upper, std::size_t i) {
    if (i == 0 || i + 1 >= lower.size() || lower.size() != upper.size())
        fail(ErrorCode::DomainError, "stencil index out of range");
    Stencil s;
    s[Stencil::Minus] = layer_node(lower, i - 1);
    s[Stencil::Center] = layer_node(lower, i);
    s[Stencil::Plus] = layer_node(lower, i + 1);
    s[Stencil::HatMinus] = layer_node(upper, i - 1);
    s[Stencil::Hat] = layer_node(upper, i);
    s[Stencil::HatPlus] = layer_node(upper, i + 1);
    return s;
}

namespace {

StepResult step_orthogonal(SchemeId id, const SchemeParams& p, const Layer& lower, double tau) {
    const std::size_t n = lower.size();
    Layer next = lower;
    next.t = lower.t + tau;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const Stencil s = stencil_at(lower, lower, i);
        const Terms rhs = orthogonal_rhs(id, p, s);
        next.u[i] = solve_time_term(id, p, s.u(), rhs.sum, tau);
    }
    next.u[0] = boundary_value(p, lower, next, 0, 1);
    next.u[n - 1] = boundary_value(p, lower, next, n - 1, n - 2);
    return {std::move(next), {}};
}

// Drift at every node: interior from the mesh equation, ends extrapolated.
void move_nodes(SchemeId id, const SchemeParams& p, const Layer& lower, Layer& next) {
    const std::size_t n = lower.size();
    std::vector<double> dx(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) dx[i] = mesh_drift(id, p, stencil_at(lower, next, i));
    if (n >= 4) {
        dx[0] = extrapolate_drift(lower.x, dx, 0, 1, 2);
        dx[n - 1] = extrapolate_drift(lower.x, dx, n - 1, n - 2, n - 3);
    } else {
        dx[0] = dx[n - 1] = dx[1];
    }
    for (std::size_t i = 0; i < n; ++i) next.x[i] = lower.x[i] + dx[i];
}

StepResult step_moving_explicit(SchemeId id, const SchemeParams& p, const Layer& lower,
                                double tau) {
    const std::size_t n = lower.size();
    Layer next = lower;
    next.t = lower.t + tau;
    move_nodes(id, p, lower, next);
    for (std::size_t i = 1; i + 1 < n; ++i)
        next.u[i] = explicit_moving_u(id, p, stencil_at(lower, next, i));
    next.u[0] = boundary_value(p, lower, next, 0, 1);
    next.u[n - 1] = boundary_value(p, lower, next, n - 1, n - 2);
    if (next.rho) {
        auto& rho = *next.rho;
        for (std::size_t i = 0; i + 1 < n; ++i)
            rho[i] = (*lower.rho)[i] * (lower.x[i + 1] - lower.x[i]) / (next.x[i + 1] - next.x[i]);
        rho[n - 1] = rho[n - 2];
    }
    return {std::move(next), {}};
}

StepResult step_sh31a(const SchemeParams& p, const Layer& lower, double tau) {
    const std::size_t n = lower.size();
    Layer next = lower;
    next.t = lower.t + tau;
    move_nodes(SchemeId::SH31A, p, lower, next);
    auto cell = [&](std::size_t i) {
        return (lower.u[i] + lower.u[i + 1]) * (lower.x[i + 1] - lower.x[i]) /
               (next.x[i + 1] - next.x[i]);
    };
    if (p.boundary == BoundaryPolicy::CopyEnds) next.u[0] = 0.5 * cell(0);
    else next.u[0] = p.boundary_value ? p.boundary_value(next.t, next.x[0]) : lower.u[0];
    for (std::size_t i = 0; i + 1 < n; ++i) next.u[i + 1] = cell(i) - next.u[i];
    return {std::move(next), {}};
}

// Drift of the mass-coordinate scheme at every node; values beyond the ends
// repeat the end values.
void move_mass_nodes(const SchemeParams& p, const Layer& lower, Layer& next, double tau) {
    const std::size_t n = lower.size();
    const auto& s = *lower.s;
    const double e = sigma_of(p) + 1.0;
    const double a = p.weight_alpha;
    auto w = [e](const Layer& l, std::ptrdiff_t i) {
        const auto k = static_cast<std::size_t>(
            std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(l.size()) - 1));
        return std::pow(positive(l.u[k], "u"), e);
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::ptrdiff_t>(i);
        const double hp = i + 1 < n ? s[i + 1] - s[i] : s[i] - s[i - 1];
        const double hm = i > 0 ? s[i] - s[i - 1] : s[i + 1] - s[i];
        double flux = 0.0;
        if (a > 0) flux += a * (w(lower, k + 1) - w(lower, k - 1));
        if (a < 1) flux += (1.0 - a) * (w(next, k + 1) - w(next, k - 1));
        next.x[i] = lower.x[i] - tau / e * flux / (hp + hm);
    }
}

StepResult step_sh31n(const SchemeParams& p, const Layer& lower, double tau) {
    const SchemeId id = SchemeId::SH31N;
    const std::size_t n = lower.size();
    Layer next = lower;
    next.t = lower.t + tau;
    StepDiagnostics diag;
    auto ends = [&](Layer& l) {
        l.u[0] = boundary_value(p, lower, l, 0, 1);
        l.u[n - 1] = boundary_value(p, lower, l, n - 1, n - 2);
    };
    if (p.weight_alpha == 1.0) {
        move_mass_nodes(p, lower, next, tau);
        for (std::size_t i = 1; i + 1 < n; ++i)
            next.u[i] = explicit_moving_u(id, p, stencil_at(lower, next, i));
        ends(next);
        return {std::move(next), diag};
    }
    // The u-equation does not involve x, so solve for u_hat first and move
    // the nodes afterwards. Dirichlet data is sampled at the lower positions.
    auto system = [&](const std::vector<double>& z) {
        Layer l = next;
        l.u = z;
        std::vector<Residual> r(n);
        for (std::size_t i = 1; i + 1 < n; ++i) r[i] = residual_terms(id, p, stencil_at(lower, l, i));
        Layer b = l;
        ends(b);
        r[0] = {z[0] - b.u[0], std::max(std::abs(z[0]), std::abs(b.u[0]))};
        r[n - 1] = {z[n - 1] - b.u[n - 1], std::max(std::abs(z[n - 1]), std::abs(b.u[n - 1]))};
        return r;
    };
    // Nonlinear Jacobi: each node solved with its neighbours frozen.
    auto jacobi = [&](const std::vector<double>& z) {
        Layer l = next;
        l.u = z;
        std::vector<double> out = z;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Stencil s = stencil_at(lower, l, i);
            out[i] = detail::solve_scalar(
                [&](double v) {
                    s[Stencil::Hat].u = v;
                    return residual_terms(id, p, s);
                },
                z[i]);
        }
        l.u = out;
        ends(l);
        return l.u;
    };
    const auto solved = detail::solve_system(system, lower.u, 1, jacobi);
    next.u = solved.x;
    diag.solver_iterations = solved.iterations;
    move_mass_nodes(p, lower, next, tau);
    return {std::move(next), diag};
}

StepResult step_sh54i(const SchemeParams& p, const Layer& lower, double tau) {
    const SchemeId id = SchemeId::SH54I;
    const std::size_t n = lower.size();
    if (n < 4) fail(ErrorCode::InvalidParameter, "SH54I needs at least 4 nodes");
    Layer guess = step_moving_explicit(SchemeId::SH54E, p, lower, tau).layer;
    std::vector<double> z0(2 * n);
    for (std::size_t i = 0; i < n; ++i) z0[2 * i] = guess.x[i], z0[2 * i + 1] = guess.u[i];

    auto unpack = [&](const std::vector<double>& z) {
        Layer l = lower;
        l.t = lower.t + tau;
        for (std::size_t i = 0; i < n; ++i) l.x[i] = z[2 * i], l.u[i] = z[2 * i + 1];
        return l;
    };
    auto edge_x = [&](const Layer& l, std::size_t edge, std::size_t near, std::size_t far) {
        std::vector<double> dx(n, 0.0);
        dx[near] = l.x[near] - lower.x[near];
        dx[far] = l.x[far] - lower.x[far];
        return lower.x[edge] + extrapolate_drift(lower.x, dx, edge, near, far);
    };
    auto pair = [](double a, double b) { return Residual{a - b, std::max(std::abs(a), std::abs(b))}; };
    auto system = [&](const std::vector<double>& z) {
        const Layer l = unpack(z);
        std::vector<Residual> r(2 * n);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const Stencil s = stencil_at(lower, l, i);
            r[2 * i] = mesh_residual_terms(id, p, s);
            r[2 * i + 1] = residual_terms(id, p, s);
        }
        r[0] = pair(l.x[0], edge_x(l, 0, 1, 2));
        r[2 * n - 2] = pair(l.x[n - 1], edge_x(l, n - 1, n - 2, n - 3));
        r[1] = pair(l.u[0], boundary_value(p, lower, l, 0, 1));
        r[2 * n - 1] = pair(l.u[n - 1], boundary_value(p, lower, l, n - 1, n - 2));
        return r;
    };
    // Picard map: drift and u_hat from the current upper layer.
    auto picard = [&](const std::vector<double>& z) {
        const Layer l = unpack(z);
        Layer out = l;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Stencil s = stencil_at(lower, l, i);
            const double dx = mesh_drift(id, p, s);
            const double hp = step_length(s.h_plus_hat()), hm = step_length(s.h_minus_hat());
            const double rhs = 1.0 + 4.0 * tau / (hp + hm) *
                                         (log_ratio(s.u_hat_plus(), s.u_hat()) / hp +
                                          log_ratio(s.u_hat_minus(), s.u_hat()) / hm);
            if (!(rhs > 0)) fail(ErrorCode::DomainError, "implicit step left the domain");
            out.x[i] = lower.x[i] + dx;
            out.u[i] = s.u() * std::exp(-0.25 * dx * dx / tau) * std::sqrt(rhs);
        }
        out.x[0] = edge_x(out, 0, 1, 2);
        out.x[n - 1] = edge_x(out, n - 1, n - 2, n - 3);
        out.u[0] = boundary_value(p, lower, out, 0, 1);
        out.u[n - 1] = boundary_value(p, lower, out, n - 1, n - 2);
        std::vector<double> w(2 * n);
        for (std::size_t i = 0; i < n; ++i) w[2 * i] = out.x[i], w[2 * i + 1] = out.u[i];
        return w;
    };
    const auto solved = detail::solve_system(system, z0, 5, picard);
    return {unpack(solved.x), {0.0, solved.iterations}};
}

}  // namespace

StepResult step(SchemeId id, const SchemeParams& p, const Layer& layer, double tau) {
    validate(id, p);
    layer.validate();
    if (!(tau > 0) || !std::isfinite(tau)) fail(ErrorCode::InvalidParameter, "tau must be positive");
    if (layer.size() < 3) fail(ErrorCode::InvalidParameter, "layer needs at least 3 nodes");
    const Geometry g = traits(id).geometry;
    if (g == Geometry::Mass) require_mass_grid(layer, id != SchemeId::SH31N);

    StepResult out;
    try {
        switch (id) {
        case SchemeId::SH31A: out = step_sh31a(p, layer, tau); break;
        case SchemeId::SH31N: out = step_sh31n(p, layer, tau); break;
        case SchemeId::SH54I: out = step_sh54i(p, layer, tau); break;
        case SchemeId::SH53:
        case SchemeId::SH54E:
        case SchemeId::TS5G:
        case SchemeId::TS5U: out = step_moving_explicit(id, p, layer, tau); break;
        default: out = step_orthogonal(id, p, layer, tau); break;
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError) throw;
        fail(ErrorCode::StabilityBreach, std::string(e.what()) + "; reduce tau");
    }
    guard_layer(id, out.layer);
    const Layer pair[2] = {layer, out.layer};
    out.diagnostics.max_residual = max_residual(id, p, pair);
    return out;
}

std::vector<Layer> run(SchemeId id, const SchemeParams& p, const Layer& initial,
                       const TimeMesh& mesh) {
    if (mesh.times.empty()) fail(ErrorCode::InvalidParameter, "empty time mesh");
    if (std::abs(initial.t - mesh.times.front()) > 1e-12 * std::max(1.0, std::abs(initial.t)))
        fail(ErrorCode::InvalidParameter, "initial layer time does not match the time mesh");
    std::vector<Layer> layers{initial};
    layers.reserve(mesh.times.size());
    for (std::size_t k = 0; k + 1 < mesh.times.size(); ++k) {
        Layer next = step(id, p, layers.back(), mesh.times[k + 1] - mesh.times[k]).layer;
        next.t = mesh.times[k + 1];
        layers.push_back(std::move(next));
    }
    return layers;
}

double max_residual(SchemeId id, const SchemeParams& p, std::span<const Layer> layers) {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
        const Layer& lo = layers[k];
        const Layer& hi = layers[k + 1];
        if (lo.size() != hi.size()) fail(ErrorCode::LayerMismatch, "layers differ in size");
        for (std::size_t i = 1; i + 1 < lo.size(); ++i) {
            const Stencil s = stencil_at(lo, hi, i);
            worst = std::max(worst, residual_terms(id, p, s).normalized());
            worst = std::max(worst, mesh_residual_terms(id, p, s).normalized());
        }
    }
    return worst;
}

}  // namespace heatsym
