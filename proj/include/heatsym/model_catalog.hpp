#pragma once

#include <optional>
#include <vector>

#include "heatsym/model.hpp"
#include "heatsym/scheme_id.hpp"
#include "heatsym/symmetry.hpp"
#include "heatsym/transforms.hpp"

namespace heatsym {

enum class MeshClass {
    OrthogonalUniform,
    OrthogonalUniformLogTime,
    OrthogonalNonuniformSpace,
    MovingFlatLayers,
    MassCoordinate,
};

enum class Coordinates { Physical, Mass };

/// A scheme admitted by a case together with the generators it is claimed
/// to be invariant under (not always the full algebra of the equation).
struct SchemeBinding {
    SchemeId id;
    std::vector<MeshClass> mesh;
    Coordinates coordinates = Coordinates::Physical;
    std::vector<SymmetryGenerator> generators;
};

struct TransformLink {
    TransformId transform;
    HeatModel target;
};

struct ModelEntry {
    HeatModel model;
    std::vector<SymmetryGenerator> generators;
    std::vector<MeshClass> mesh_class;
    std::vector<SchemeBinding> bindings;
    std::vector<TransformLink> transforms;

    std::vector<SchemeId> schemes() const;
    const SchemeBinding* binding(SchemeId id) const;
};

/// Throws UnknownCase or InvalidParameter.
ModelEntry lookup(const HeatModel& model);

/// One representative of every classification case, with sample parameters.
std::vector<HeatModel> list_models();

/// The model a scheme is written for, with representative parameters.
HeatModel representative_model(SchemeId id);

/// Which mesh conditions a mesh class relies on.
struct MeshRequirements {
    bool uniform_t = true;
    bool uniform_x = true;
    bool orthogonal = true;
    bool flat_layers = true;
};

MeshRequirements requirements(const std::vector<MeshClass>& classes);

}  // namespace heatsym
