#pragma once

#include <span>
#include <utility>
#include <vector>

namespace heatsym {

/// u = C (t0/(t+t0))^{1/2} exp(-(x-a)^2 / (4(t+t0))).
struct KernelSolution {
    double C = 1.0;
    double t0 = 1.0;
    double a = 0.0;
};

/// alpha U1 + beta U2 with U_k = (t + t_k)^{-1/2} exp(-(x - c_k)^2 / (4(t + t_k))).
struct SuperposedKernels {
    double alpha = 1.0;
    double beta = 1.0;
    double t1 = 10.0;
    double t2 = 10.0;
    double a = -8.0;
    double b = 8.0;
};

double kernel_value(const KernelSolution& k, double t, double x);

/// Nodes a + (x0 - a)(t + t0)/t0.
std::vector<double> kernel_mesh(const KernelSolution& k, std::span<const double> x0, double t);

double superposition_value(const SuperposedKernels& sp, double t, double x);

/// Trajectory velocity of the superposition: the U-weighted mean of
/// (x - a)/(t + t1) and (x - b)/(t + t2).
double superposition_trajectory_rhs(const SuperposedKernels& sp, double t, double x);

enum class Y3Branch { MinusHMinus, Zero, PlusHPlus };

/// Residuals of the mesh and value equations for a solution u = e^{ct} f(x)
/// of the explicit moving-mesh heat scheme, with dx = -h-, 0 or h+.
std::pair<double, double> reduced_Y3_residuals(double h_minus, double h_plus, double f_minus,
                                               double f, double f_plus, double c, double tau,
                                               Y3Branch branch);

}  // namespace heatsym
