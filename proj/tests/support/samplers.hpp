#pragma once

#include <random>

#include "heatsym/schemes.hpp"

namespace sampler {

/// Representative parameters for a scheme, including K_fn/Q_fn for the
/// arbitrary-coefficient cases (SH11: K = 1 + u^2, Q = u^3; SH12: K = u^2).
heatsym::SchemeParams params_for(heatsym::SchemeId id);

/// A stencil of the given geometry with random positive data. It need not
/// satisfy any scheme. Mass stencils obey the constraint x_s = 1/rho on both
/// layers; `uniform_s` makes their s steps equal.
heatsym::Stencil random_stencil(heatsym::Geometry g, std::mt19937_64& rng, bool uniform_s = false);

/// Random lower layer and upper neighbours; the upper centre (and node drift)
/// are then fixed by the scheme, so the stencil lies on its solution set.
/// Draws are repeated until the scheme admits the data.
heatsym::Stencil solution_stencil(heatsym::SchemeId id, const heatsym::SchemeParams& p,
                                  std::mt19937_64& rng);

}  // namespace sampler
