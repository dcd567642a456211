#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heatsym/exact_solutions.hpp"
#include "heatsym/meshes.hpp"
#include "heatsym/schemes.hpp"

namespace cli {

/// Bad or inconsistent configuration; maps to exit status 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TimeMeshKind { Uniform, Log };
enum class InitialKind { Gaussian, TwoGaussians, Constant, Hat, Table };
enum class BoundaryKind { Hold, Copy, Exact };

struct RunConfig {
    heatsym::HeatModel model;
    heatsym::SchemeId scheme = heatsym::SchemeId::EQ55A;
    double x_left = -10.0;
    double x_right = 10.0;
    int nodes = 101;
    double T = 1.0;
    int steps = 100;
    std::optional<TimeMeshKind> time_mesh;  // chosen from the scheme when unset
    InitialKind initial = InitialKind::Gaussian;
    heatsym::KernelSolution gaussian;
    heatsym::SuperposedKernels two_gaussians;
    double constant = 1.0;
    double hat_height = 1.0;
    double hat_width = 2.0;
    double floor = 0.0;  // added to every initial profile
    std::string table_path;
    /// Exact when the config has a closed-form solution and no boundary key, else Hold.
    BoundaryKind boundary = BoundaryKind::Hold;
    double weight_alpha = 1.0;
    double k_power = 2.0;  // K = u^k_power for the arbitrary-K schemes
    double q_power = 3.0;  // Q = u^q_power for SH11
    std::string output_path = "solution.csv";
};

using KeyValues = std::map<std::string, std::string>;

/// Every key a config file or flag may set.
const std::vector<std::string>& config_keys();

/// Flat key=value text; '#' starts a comment. Throws ConfigError.
KeyValues read_config_file(const std::string& path);

/// Builds and validates a config; `values` override the defaults.
RunConfig make_config(const KeyValues& values);

heatsym::SchemeParams scheme_params(const RunConfig& cfg);
heatsym::TimeMesh time_mesh(const RunConfig& cfg);
std::function<double(double)> initial_profile(const RunConfig& cfg);
heatsym::Layer initial_layer(const RunConfig& cfg);

/// Closed-form solution matching the initial condition, if the model is the
/// linear heat equation and the profile is a kernel or a superposition.
std::optional<std::function<double(double, double)>> exact_solution(const RunConfig& cfg);

}  // namespace cli
