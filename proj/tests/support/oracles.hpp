#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the scheme code.

#include <functional>
#include <random>
#include <vector>

#include "heatsym/exact_solutions.hpp"
#include "heatsym/model.hpp"
#include "heatsym/symmetry.hpp"

namespace oracle {

struct Coefficients {
    std::function<double(double)> K;
    std::function<double(double)> Q;
};

/// K and Q of a classification case written out by hand. The arbitrary
/// families get K = 1 + u^2 and Q = u^3.
Coefficients coefficients(const heatsym::HeatModel& m);

/// Largest relative value of pr^(2) X (u_t - (K u_x)_x - Q) over random jets
/// on the equation manifold. Coefficient derivatives are taken by
/// Richardson-extrapolated central differences. Only the (t, x, u)
/// components of the generator are used.
double determining_defect(const heatsym::SymmetryGenerator& gen, const Coefficients& c,
                          std::mt19937_64& rng, int samples = 20);

/// Mass grid for x_s = 1/u by plain bisection on each step.
std::vector<double> bisection_mass_mesh(const std::function<double(double)>& u0, double x_left,
                                        double h_s, int count);

/// Marches the reduced invariant system (mesh equation and value equation
/// for u = e^{ct} f(x)) node by node: given (x_{i-1}, f_{i-1}) and (x_i, f_i)
/// it solves for (x_{i+1}, f_{i+1}) with a damped 2x2 Newton iteration.
struct ReducedProfile {
    std::vector<double> x;
    std::vector<double> f;
};

ReducedProfile march_reduced(heatsym::Y3Branch branch, double c, double tau, double h0, double f0,
                             double f1, int count);

/// Positions at `times` of the trajectory dX/dt = -2 U_x/U of the
/// superposition, integrated with an adaptive Dormand-Prince method and
/// the x-derivative taken from the closed form.
std::vector<double> superposition_trajectory(const heatsym::SuperposedKernels& sp, double x0,
                                             const std::vector<double>& times);

/// u_t - u_xx of the heat kernel by 6th order central differences.
double kernel_heat_defect(const heatsym::KernelSolution& k, double t, double x);

}  // namespace oracle
