#pragma once

#include <span>
#include <string>
#include <vector>

#include "heatsym/meshes.hpp"
#include "heatsym/stencil.hpp"

namespace heatsym {

enum class TransformKind {
    CH22,   // u -> u - delta t,        t -> delta (e^{delta t} - 1)
    CH32,   // u -> u e^{-delta t},     t -> (delta/sigma)(e^{delta sigma t} - 1)
    CH44A,  // u -> u cosh^3(x/sqrt3),  x -> sqrt3 tanh(x/sqrt3)
    CH44B,  // u -> u cos^3(x/sqrt3),   x -> sqrt3 tan(x/sqrt3), |x| < sqrt3 pi/2
    CH55,   // u -> u e^{-delta t}
    CH56,   // u -> u - delta t
};

/// A change of variables with validated parameters.
class TransformId {
public:
    static TransformId ch22(double delta);
    static TransformId ch32(double delta, double sigma);
    static TransformId ch44a();
    static TransformId ch44b();
    static TransformId ch55(double delta);
    static TransformId ch56(double delta);

    /// "CH32" etc.; delta and sigma are read only where the kind uses them.
    static TransformId parse(const std::string& name, double delta, double sigma);

    TransformKind kind() const { return kind_; }
    double delta() const { return delta_; }
    double sigma() const { return sigma_; }
    std::string name() const;

private:
    TransformId(TransformKind kind, double delta, double sigma)
        : kind_(kind), delta_(delta), sigma_(sigma) {}

    TransformKind kind_;
    double delta_;
    double sigma_;
};

Point apply(const TransformId& tr, Point p);
Point apply_inverse(const TransformId& tr, Point p);

double apply_time(const TransformId& tr, double t);
double apply_time_inverse(const TransformId& tr, double t);

/// Pointwise image of a layer; s and rho are carried over unchanged.
Layer apply(const TransformId& tr, const Layer& layer);
Layer apply_inverse(const TransformId& tr, const Layer& layer);

std::vector<Layer> transform_solution(const TransformId& tr, std::span<const Layer> layers);
std::vector<Layer> inverse_transform_solution(const TransformId& tr,
                                              std::span<const Layer> layers);

TimeMesh transform_time_mesh(const TransformId& tr, const TimeMesh& mesh);

}  // namespace heatsym
