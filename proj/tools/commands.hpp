#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace cli {

enum Exit : int { Ok = 0, CheckFailed = 1, BadConfig = 2, SolverFailure = 3, AboveThreshold = 4 };

int cmd_run(const RunConfig& cfg);

struct AuditOptions {
    int trials = 100;
    std::vector<double> eps{0.05, -0.05, 0.2, -0.2};
    std::uint64_t seed = 1;
    /// Labels to audit; empty means the generators bound to the scheme. Any
    /// generator of the case's algebra may be named.
    std::vector<std::string> generators;
    double threshold = 1e-8;
};

int cmd_audit(const RunConfig& cfg, const AuditOptions& opt);
int cmd_convergence(const RunConfig& cfg, int refinements, double lambda);
int cmd_conserve_check(const RunConfig& cfg, double tol);
int cmd_transform(const std::string& name, double delta, double sigma, bool inverse,
                  const std::string& input, const std::string& output);
int cmd_residual_check(const RunConfig& cfg, const std::string& input, double tol);
int cmd_list_models();

}  // namespace cli
