#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <stdexcept>

namespace oracle {

using heatsym::HeatModel;
using heatsym::KFamily;
using heatsym::QFamily;

Coefficients coefficients(const HeatModel& m) {
    const double sigma = m.sigma.value_or(0.0);
    const double n = m.n.value_or(0.0);
    const double delta = m.delta.value_or(0.0);
    const double alpha = m.alpha.value_or(0.0);
    const double sign = m.sign.value_or(0.0);
    Coefficients c;
    switch (m.k_family) {
    case KFamily::Arbitrary: c.K = [](double u) { return 1.0 + u * u; }; break;
    case KFamily::Exponential: c.K = [](double u) { return std::exp(u); }; break;
    case KFamily::Power: c.K = [sigma](double u) { return std::pow(u, sigma); }; break;
    case KFamily::PowerMinus43: c.K = [](double u) { return std::pow(u, -4.0 / 3.0); }; break;
    case KFamily::Linear: c.K = [](double) { return 1.0; }; break;
    }
    const bool critical = m.k_family == KFamily::PowerMinus43;
    switch (m.q_family) {
    case QFamily::Arbitrary: c.Q = [](double u) { return u * u * u; }; break;
    case QFamily::Zero: c.Q = [](double) { return 0.0; }; break;
    case QFamily::Constant: c.Q = [delta](double) { return delta; }; break;
    case QFamily::ExpSource: {
        const double a = m.k_family == KFamily::Linear ? 1.0 : alpha;
        c.Q = [sign, a](double u) { return sign * std::exp(a * u); };
        break;
    }
    case QFamily::PowerSource: c.Q = [sign, n](double u) { return sign * std::pow(u, n); }; break;
    case QFamily::LogSource: c.Q = [delta](double u) { return delta * u * std::log(u); }; break;
    case QFamily::LinearSource: c.Q = [delta](double u) { return delta * u; }; break;
    case QFamily::MixedExpConst: c.Q = [sign, delta](double u) { return sign * std::exp(u) + delta; }; break;
    case QFamily::MixedPowerLinear:
        if (critical)
            c.Q = [alpha, delta](double u) { return alpha * std::pow(u, -1.0 / 3.0) + delta * u; };
        else
            c.Q = [sign, sigma, delta](double u) { return sign * std::pow(u, sigma + 1.0) + delta * u; };
        break;
    case QFamily::MixedCritical: c.Q = [alpha](double u) { return alpha * std::pow(u, -1.0 / 3.0); }; break;
    }
    return c;
}

namespace {

using F3 = std::function<double(const std::array<double, 3>&)>;

// Central difference along coordinate i, Richardson extrapolated.
double partial(const F3& f, std::array<double, 3> p, int i) {
    auto central = [&](double h) {
        auto a = p, b = p;
        a[i] += h;
        b[i] -= h;
        return (f(a) - f(b)) / (2 * h);
    };
    const double h = 1e-2;
    return (4 * central(h / 2) - central(h)) / 3;
}

double partial2(const F3& f, const std::array<double, 3>& p, int i, int j) {
    F3 fi = [&](const std::array<double, 3>& q) { return partial(f, q, i); };
    return partial(fi, p, j);
}

double deriv(const std::function<double(double)>& f, double u) {
    return partial([&](const std::array<double, 3>& q) { return f(q[0]); }, {u, 0, 0}, 0);
}

double deriv2(const std::function<double(double)>& f, double u) {
    return partial2([&](const std::array<double, 3>& q) { return f(q[0]); }, {u, 0, 0}, 0, 0);
}

F3 component(const heatsym::SymmetryGenerator::Coefficient& c) {
    return [c](const std::array<double, 3>& q) {
        if (!c) return 0.0;
        heatsym::Node n;
        n.t = q[0], n.x = q[1], n.u = q[2];
        return c(n);
    };
}

}  // namespace

double determining_defect(const heatsym::SymmetryGenerator& gen, const Coefficients& c,
                          std::mt19937_64& rng, int samples) {
    std::uniform_real_distribution<double> T(0.2, 1.0), X(-1.0, 1.0), U(0.5, 1.5), D(-1.0, 1.0);
    const F3 tt = component(gen.xi_t), xx = component(gen.xi_x), et = component(gen.eta);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const std::array<double, 3> p{T(rng), X(rng), U(rng)};
        const double ux = D(rng), uxx = D(rng), uxt = D(rng);
        const double u = p[2];
        const double K = c.K(u), K1 = deriv(c.K, u), K2 = deriv2(c.K, u);
        const double Q1 = deriv(c.Q, u);
        const double ut = K * uxx + K1 * ux * ux + c.Q(u);

        auto d = [&](const F3& f, int i) { return partial(f, p, i); };
        auto d2 = [&](const F3& f, int i, int j) { return partial2(f, p, i, j); };
        enum { t = 0, x = 1, uu = 2 };
        const double eta = et(p);

        const double eta_t = d(et, t) + (d(et, uu) - d(tt, t)) * ut - d(xx, t) * ux -
                             d(tt, uu) * ut * ut - d(xx, uu) * ux * ut;
        const double eta_x = d(et, x) + (d(et, uu) - d(xx, x)) * ux - d(tt, x) * ut -
                             d(xx, uu) * ux * ux - d(tt, uu) * ux * ut;
        const double eta_xx =
            d2(et, x, x) + (2 * d2(et, x, uu) - d2(xx, x, x)) * ux - d2(tt, x, x) * ut +
            (d2(et, uu, uu) - 2 * d2(xx, x, uu)) * ux * ux - 2 * d2(tt, x, uu) * ux * ut -
            d2(xx, uu, uu) * ux * ux * ux - d2(tt, uu, uu) * ux * ux * ut +
            (d(et, uu) - 2 * d(xx, x)) * uxx - 2 * d(tt, x) * uxt - 3 * d(xx, uu) * ux * uxx -
            d(tt, uu) * ut * uxx - 2 * d(tt, uu) * ux * uxt;

        const std::array<double, 6> terms{eta_t,       K1 * eta * uxx,      K * eta_xx,
                                          K2 * eta * ux * ux, 2 * K1 * ux * eta_x, Q1 * eta};
        const double value = terms[0] - terms[1] - terms[2] - terms[3] - terms[4] - terms[5];
        double scale = 1.0;
        for (double v : terms) scale = std::max(scale, std::abs(v));
        worst = std::max(worst, std::abs(value) / scale);
    }
    return worst;
}

std::vector<double> bisection_mass_mesh(const std::function<double(double)>& u0, double x_left,
                                        double h_s, int count) {
    std::vector<double> x{x_left};
    for (int i = 1; i < count; ++i) {
        const double xi = x.back();
        auto g = [&](double dd) { return dd / h_s - 0.5 * (1 / u0(xi) + 1 / u0(xi + dd)); };
        double lo = 0, hi = h_s / u0(xi);
        while (g(hi) < 0) hi *= 2;
        for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(xi)); ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) < 0 ? lo : hi) = mid;
        }
        x.push_back(xi + 0.5 * (lo + hi));
    }
    return x;
}

namespace {

// Residuals of the moving-mesh heat scheme for u = e^{ct} f, written out from
// the scheme: mesh equation and value equation at one node.
std::array<double, 2> reduced_system(heatsym::Y3Branch br, double c, double tau, double hm,
                                     double hp, double fm, double f, double fp) {
    const double lp = std::log(fp / f), lm = std::log(fm / f);
    double dx = 0, fmoved = f;
    if (br == heatsym::Y3Branch::PlusHPlus) dx = hp, fmoved = fp;
    if (br == heatsym::Y3Branch::MinusHMinus) dx = -hm, fmoved = fm;
    const double mesh = dx - 2 * tau / (hp + hm) * (-(hm / hp) * lp + (hp / hm) * lm);
    const double r = f / fmoved;
    const double value =
        r * r * std::exp(-2 * c * tau - dx * dx / (2 * tau)) - 1 + 4 * tau / (hp + hm) * (lp / hp + lm / hm);
    return {mesh, value};
}

}  // namespace

ReducedProfile march_reduced(heatsym::Y3Branch branch, double c, double tau, double h0, double f0,
                             double f1, int count) {
    ReducedProfile p{{0.0, h0}, {f0, f1}};
    for (int i = 2; i < count; ++i) {
        const double hm = p.x[i - 1] - p.x[i - 2];
        const double fm = p.f[i - 2], f = p.f[i - 1];
        // unknowns: log h+, log f+/f
        std::array<double, 2> z{std::log(hm), std::log(f / fm)};
        auto F = [&](const std::array<double, 2>& v) {
            return reduced_system(branch, c, tau, hm, std::exp(v[0]), fm, f, f * std::exp(v[1]));
        };
        bool done = false;
        for (int it = 0; it < 100 && !done; ++it) {
            const auto r = F(z);
            if (std::max(std::abs(r[0]), std::abs(r[1])) < 1e-14) {
                done = true;
                break;
            }
            double J[2][2];
            for (int j = 0; j < 2; ++j) {
                auto a = z, b = z;
                a[j] += 1e-7, b[j] -= 1e-7;
                const auto ra = F(a), rb = F(b);
                J[0][j] = (ra[0] - rb[0]) / 2e-7;
                J[1][j] = (ra[1] - rb[1]) / 2e-7;
            }
            const double det = J[0][0] * J[1][1] - J[0][1] * J[1][0];
            if (det == 0 || !std::isfinite(det)) throw std::runtime_error("singular reduced Jacobian");
            const double d0 = (J[1][1] * r[0] - J[0][1] * r[1]) / det;
            const double d1 = (J[0][0] * r[1] - J[1][0] * r[0]) / det;
            double lambda = 1.0;
            const double before = std::max(std::abs(r[0]), std::abs(r[1]));
            for (; lambda > 1e-6; lambda /= 2) {
                const std::array<double, 2> trial{z[0] - lambda * d0, z[1] - lambda * d1};
                const auto rt = F(trial);
                if (std::isfinite(rt[0]) && std::isfinite(rt[1]) &&
                    std::max(std::abs(rt[0]), std::abs(rt[1])) < before) {
                    z = trial;
                    break;
                }
            }
            if (lambda <= 1e-6) done = before < 1e-12;
            if (lambda <= 1e-6 && !done) throw std::runtime_error("reduced march stalled");
        }
        if (!done) throw std::runtime_error("reduced march did not converge");
        p.x.push_back(p.x.back() + std::exp(z[0]));
        p.f.push_back(f * std::exp(z[1]));
    }
    return p;
}

std::vector<double> superposition_trajectory(const heatsym::SuperposedKernels& sp, double x0,
                                             const std::vector<double>& times) {
    namespace odeint = boost::numeric::odeint;
    auto rhs = [&sp](const double& x, double& dxdt, double t) {
        const double T1 = t + sp.t1, T2 = t + sp.t2;
        const double U1 = std::exp(-(x - sp.a) * (x - sp.a) / (4 * T1)) / std::sqrt(T1);
        const double U2 = std::exp(-(x - sp.b) * (x - sp.b) / (4 * T2)) / std::sqrt(T2);
        const double Ux = -sp.alpha * (x - sp.a) / (2 * T1) * U1 - sp.beta * (x - sp.b) / (2 * T2) * U2;
        dxdt = -2 * Ux / (sp.alpha * U1 + sp.beta * U2);
    };
    std::vector<double> out;
    double x = x0;
    auto stepper = odeint::make_dense_output(1e-12, 1e-12, odeint::runge_kutta_dopri5<double>());
    odeint::integrate_times(stepper, rhs, x, times.begin(), times.end(), 1e-3,
                            [&out](const double& v, double) { out.push_back(v); });
    return out;
}

double kernel_heat_defect(const heatsym::KernelSolution& k, double t, double x) {
    const double h = 1e-2;
    auto u = [&](double tt, double xx) { return heatsym::kernel_value(k, tt, xx); };
    const double c1[] = {-1, 9, -45, 0, 45, -9, 1};
    const double c2[] = {2, -27, 270, -490, 270, -27, 2};
    double ut = 0, uxx = 0;
    for (int j = -3; j <= 3; ++j) {
        ut += c1[j + 3] * u(t + j * h, x);
        uxx += c2[j + 3] * u(t, x + j * h);
    }
    return std::abs(ut / (60 * h) - uxx / (180 * h * h));
}

}  // namespace oracle
