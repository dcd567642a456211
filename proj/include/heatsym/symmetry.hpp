#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>

#include "heatsym/schemes.hpp"
#include "heatsym/stencil.hpp"

namespace heatsym {

/// X = xi_t d/dt + xi_x d/dx + eta d/du (+ xi_s d/ds + eta_rho d/drho for
/// the mass-coordinate systems). Empty extras mean zero coefficients.
struct SymmetryGenerator {
    using Coefficient = std::function<double(const Node&)>;

    Coefficient xi_t;
    Coefficient xi_x;
    Coefficient eta;
    Coefficient xi_s;
    Coefficient eta_rho;
    std::string label;

    static SymmetryGenerator make(std::string label,
                                  std::function<double(double, double, double)> xi_t,
                                  std::function<double(double, double, double)> xi_x,
                                  std::function<double(double, double, double)> eta);
};

Point flow_point(const SymmetryGenerator& gen, double eps, Point p);
Node flow_node(const SymmetryGenerator& gen, double eps, const Node& n);

/// Flows all six nodes. Throws FlowBlowup, or LayerSkew when the nodes of a
/// layer no longer share one time value.
Stencil flow_stencil(const SymmetryGenerator& gen, double eps, const Stencil& s);

enum class SpaceVariable { X, S };

struct MeshConditionReport {
    bool uniform_t = true;
    bool uniform_x = true;
    bool orthogonal = true;
    bool flat_layers = true;
    /// uniform_t, uniform_x, orthogonal, flat_layers
    std::array<double, 4> max_defects{};
};

inline constexpr double kMeshConditionTolerance = 1e-8;

/// Discrete uniformity, orthogonality and flat-layer conditions for the
/// coefficients of `gen` sampled on the stencils. With SpaceVariable::S the
/// space coefficient is xi_s and nodes are located by s.
MeshConditionReport check_mesh_conditions(const SymmetryGenerator& gen,
                                          std::span<const Stencil> samples,
                                          SpaceVariable space = SpaceVariable::X);

/// Normalized residual of the flowed stencil: the largest of the difference
/// equation, the mesh equation and the departure from the scheme's stencil
/// geometry (orthogonality and step uniformity, or fixed s columns for mass
/// coordinates). Throws InadmissibleImage.
double invariance_defect(SchemeId id, const SchemeParams& params, const SymmetryGenerator& gen,
                         const Stencil& s, double eps);

/// |d/d eps expr(flow(eps, s))| at eps = 0, divided by max(1, |expr(s)|).
double invariant_directional_defect(const std::function<double(const Stencil&)>& expr,
                                    const SymmetryGenerator& gen, const Stencil& s);

}  // namespace heatsym
