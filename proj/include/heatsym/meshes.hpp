#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace heatsym {

struct TimeMesh {
    std::vector<double> times;

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
    double tau(std::size_t n) const { return times.at(n + 1) - times.at(n); }
};

/// One time slice of a discrete solution. `s` and `rho` are present only for
/// mass-coordinate schemes; rho[i] is the density of the cell (x_i, x_{i+1})
/// and its last entry repeats the previous one.
struct Layer {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> u;
    std::optional<std::vector<double>> s;
    std::optional<std::vector<double>> rho;

    std::size_t size() const { return x.size(); }

    /// Throws DomainError when x is not increasing, lengths disagree or rho <= 0.
    void validate() const;
};

TimeMesh uniform_time(double T, int k);

/// t_n = delta ln(1 + (n/k)(e^{delta T} - 1)); maps to a uniform mesh under
/// t -> delta (e^{delta t} - 1).
TimeMesh log_time_mesh(double delta, double T, int k);

/// t_n = (delta/sigma) ln(1 + (n/k)(e^{delta sigma T} - 1)).
TimeMesh log_time_mesh(double delta, double sigma, double T, int k);

/// n+1 equally spaced nodes on [x_left, x_right] carrying u0.
Layer uniform_layer(double t, double x_left, double x_right, int nodes,
                    const std::function<double(double)>& u0);

/// Mass-coordinate grid for x_s = 1/u: x_0 = x_left and
/// (x_{i+1} - x_i)/h_s = (1/u0(x_i) + 1/u0(x_{i+1}))/2, s_i = i h_s.
Layer init_mass_mesh(const std::function<double(double)>& u0, double x_left, double h_s,
                     int count);

/// Density grid for x_s = 1/rho with constant initial density rho0:
/// x_{i+1} = x_i + h_s/rho0, s_i = s_left + i h_s.
Layer init_density_mesh(const std::function<double(double)>& u0, double x_left, double h_s,
                        int count, double rho0 = 1.0);

}  // namespace heatsym
