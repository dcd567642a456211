#pragma once

#include <functional>
#include <vector>

#include "heatsym/schemes.hpp"

namespace heatsym::detail {

using System = std::function<std::vector<Residual>(const std::vector<double>&)>;
using FixedPoint = std::function<std::vector<double>(const std::vector<double>&)>;

struct SolveResult {
    std::vector<double> x;
    int iterations = 0;
};

/// Damped Newton with a banded finite-difference Jacobian (|row - col| <=
/// bandwidth), falling back to the fixed-point map when Newton stalls.
/// Converged when every normalized residual is below `tol`. Throws SolverDiverged.
SolveResult solve_system(const System& f, std::vector<double> x0, int bandwidth,
                         const FixedPoint& fallback, double tol = 1e-10, int max_iter = 50);

/// Scalar root of g near x0 by safeguarded Newton with a numerical derivative.
/// Throws SolverDiverged.
double solve_scalar(const std::function<Residual(double)>& g, double x0, double tol = 1e-14);

}  // namespace heatsym::detail
