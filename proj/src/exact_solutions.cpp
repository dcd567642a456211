#include "heatsym/exact_solutions.hpp"

#include <cmath>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

double gaussian(double t, double tk, double x, double c) {
    const double T = t + tk;
    if (!(T > 0)) fail(ErrorCode::DomainError, "kernel needs t + t0 > 0");
    return std::exp(-(x - c) * (x - c) / (4.0 * T)) / std::sqrt(T);
}

}  // namespace

double kernel_value(const KernelSolution& k, double t, double x) {
    return k.C * std::sqrt(k.t0) * gaussian(t, k.t0, x, k.a);
}

std::vector<double> kernel_mesh(const KernelSolution& k, std::span<const double> x0, double t) {
    if (!(k.t0 > 0)) fail(ErrorCode::InvalidParameter, "kernel needs t0 > 0");
    std::vector<double> x(x0.begin(), x0.end());
    for (double& v : x) v = k.a + (v - k.a) * (t + k.t0) / k.t0;
    return x;
}

double superposition_value(const SuperposedKernels& sp, double t, double x) {
    return sp.alpha * gaussian(t, sp.t1, x, sp.a) + sp.beta * gaussian(t, sp.t2, x, sp.b);
}

double superposition_trajectory_rhs(const SuperposedKernels& sp, double t, double x) {
    const double u1 = sp.alpha * gaussian(t, sp.t1, x, sp.a);
    const double u2 = sp.beta * gaussian(t, sp.t2, x, sp.b);
    const double u = u1 + u2;
    if (!(std::abs(u) > 0)) fail(ErrorCode::DomainError, "superposition vanishes");
    return (u1 * (x - sp.a) / (t + sp.t1) + u2 * (x - sp.b) / (t + sp.t2)) / u;
}

std::pair<double, double> reduced_Y3_residuals(double h_minus, double h_plus, double f_minus,
                                               double f, double f_plus, double c, double tau,
                                               Y3Branch branch) {
    if (!(h_minus > 0) || !(h_plus > 0) || !(tau > 0))
        fail(ErrorCode::DomainError, "steps and tau must be positive");
    if (!(f > 0) || !(f_minus > 0) || !(f_plus > 0))
        fail(ErrorCode::DomainError, "f must be positive");
    const double lp = std::log(f_plus / f);
    const double lm = std::log(f_minus / f);
    double dx = 0.0, f_moved = f;
    switch (branch) {
    case Y3Branch::MinusHMinus: dx = -h_minus, f_moved = f_minus; break;
    case Y3Branch::Zero: break;
    case Y3Branch::PlusHPlus: dx = h_plus, f_moved = f_plus; break;
    }
    const double hs = h_plus + h_minus;
    const double mesh = dx - 2.0 * tau / hs * (-(h_minus / h_plus) * lp + (h_plus / h_minus) * lm);
    const double r = f / f_moved;
    const double value = r * r * std::exp(-2.0 * c * tau - 0.5 * dx * dx / tau) -
                         (1.0 - 4.0 * tau / hs * (lp / h_plus + lm / h_minus));
    return {mesh, value};
}

}  // namespace heatsym
