#pragma once

#include <span>
#include <vector>

#include "heatsym/meshes.hpp"
#include "heatsym/schemes.hpp"

namespace heatsym {

enum class ConservationLaw { TotalMass, FirstMoment, TotalHeatOrthogonal };

struct ConservationReport {
    ConservationLaw law;
    std::vector<double> per_step_defect;
    double max_defect = 0.0;
};

/// s_N - s_0. Throws MissingMassGrid.
double total_mass(const Layer& layer);

/// Sum_i x_i h_s over all nodes. Throws MissingMassGrid.
double first_moment(const Layer& layer);

/// |change of first_moment - boundary flux balance| for two consecutive
/// mass-coordinate layers. Ghost values beyond the ends equal the end values.
/// Throws MissingMassGrid or LayerMismatch.
double first_moment_defect(const Layer& prev, const Layer& next, const SchemeParams& params);

/// Trapezoidal sum of u over x.
double total_heat_orthogonal(const Layer& layer);

ConservationReport conservation_report(ConservationLaw law, std::span<const Layer> layers,
                                       const SchemeParams& params);

}  // namespace heatsym
