#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "heatsym/meshes.hpp"
#include "heatsym/model.hpp"
#include "heatsym/scheme_id.hpp"
#include "heatsym/stencil.hpp"

namespace heatsym {

enum class BoundaryPolicy { Dirichlet, CopyEnds };

enum class Geometry {
    OrthogonalUniform,     // dx = 0, h+ = h-
    OrthogonalNonuniform,  // dx = 0, h+ != h- allowed
    Moving,                // flat layers, nodes drift by dx
    Mass,                  // orthogonal in (t, s), x carried as a dependent variable
};

struct SchemeTraits {
    Geometry geometry;
    bool implicit;  // true when the stepper needs a nonlinear solve
    bool log_time;  // must run on the logarithmic time mesh of its model
};

SchemeTraits traits(SchemeId id);

struct SchemeParams {
    HeatModel model;
    /// Weight of the lower layer in the mass-coordinate scheme, 0 <= weight_alpha <= 1.
    double weight_alpha = 1.0;
    /// Coefficients for the arbitrary-K cases (SH11, SH12).
    std::function<double(double)> K_fn;
    std::function<double(double)> Q_fn;
    BoundaryPolicy boundary = BoundaryPolicy::Dirichlet;
    /// Optional Dirichlet data u(t, x); without it end values are held.
    std::function<double(double, double)> boundary_value;
};

/// Throws InvalidParameter/UnknownCase if the scheme does not belong to
/// params.model or required coefficient functions are missing.
void validate(SchemeId id, const SchemeParams& params);

/// A residual together with the largest magnitude among its additive terms.
struct Residual {
    double value = 0.0;
    double scale = 0.0;

    double normalized() const;
};

/// Difference equation for u. Zero on the discrete solution manifold.
Residual residual_terms(SchemeId id, const SchemeParams& params, const Stencil& s);
double residual(SchemeId id, const SchemeParams& params, const Stencil& s);

/// Mesh equation (node drift, and the density update for TS5G/TS5U).
/// Identically zero for orthogonal schemes.
Residual mesh_residual_terms(SchemeId id, const SchemeParams& params, const Stencil& s);
double mesh_residual(SchemeId id, const SchemeParams& params, const Stencil& s);

/// The drift dx prescribed by the mesh equation for the current stencil
/// values (0 for orthogonal schemes).
double mesh_drift(SchemeId id, const SchemeParams& params, const Stencil& s);

/// Moves the upper layer of `s` by the mesh equation (keeping the upper
/// steps) and solves the difference equation for u_hat. For TS5 the upper
/// densities are set as well. Throws DomainError or SolverDiverged.
void complete_stencil(SchemeId id, const SchemeParams& params, Stencil& s);

/// Stencil around node i of a pair of consecutive layers; 1 <= i <= size-2.
Stencil stencil_at(const Layer& lower, const Layer& upper, std::size_t i);

struct StepDiagnostics {
    double max_residual = 0.0;  // normalized, over interior stencils
    int solver_iterations = 0;
};

struct StepResult {
    Layer layer;
    StepDiagnostics diagnostics;
};

/// Advances `layer` by tau. Throws DomainError, SolverDiverged or
/// StabilityBreach (u leaves (0, 1e150) for positive-u schemes, or nodes cross).
StepResult step(SchemeId id, const SchemeParams& params, const Layer& layer, double tau);

/// Runs step() along `mesh` starting from `initial` (whose t must be mesh.times[0]).
std::vector<Layer> run(SchemeId id, const SchemeParams& params, const Layer& initial,
                       const TimeMesh& mesh);

/// Largest normalized residual (and mesh residual) over interior stencils of
/// consecutive layers.
double max_residual(SchemeId id, const SchemeParams& params, std::span<const Layer> layers);

}  // namespace heatsym
