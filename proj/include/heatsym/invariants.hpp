#pragma once

#include <functional>
#include <string>
#include <vector>

#include "heatsym/model.hpp"
#include "heatsym/schemes.hpp"
#include "heatsym/symmetry.hpp"

namespace heatsym {

struct DifferenceInvariant {
    std::string label;
    std::function<double(const Stencil&)> expr;
};

/// The difference invariants of one symmetry algebra on one stencil type.
struct InvariantList {
    std::string name;
    HeatModel model;
    Geometry geometry;
    std::vector<SymmetryGenerator> generators;
    std::vector<DifferenceInvariant> invariants;
};

std::vector<InvariantList> invariant_lists();

}  // namespace heatsym
