#include "heatsym/transforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

const double kSqrt3 = std::sqrt(3.0);

double unit(double d, const char* name) {
    if (std::abs(std::abs(d) - 1.0) > 1e-12)
        fail(ErrorCode::InvalidParameter, std::string(name) + " must be +1 or -1");
    return d > 0 ? 1.0 : -1.0;
}

void check_trig_domain(double x) {
    if (!(std::abs(x) < kSqrt3 * std::numbers::pi / 2))
        fail(ErrorCode::DomainError, "CH44B needs |x| < sqrt(3) pi/2");
}

}  // namespace

TransformId TransformId::ch22(double delta) { return {TransformKind::CH22, unit(delta, "delta"), 0.0}; }

TransformId TransformId::ch32(double delta, double sigma) {
    if (sigma == 0.0 || !std::isfinite(sigma))
        fail(ErrorCode::InvalidParameter, "CH32 needs a finite sigma != 0");
    return {TransformKind::CH32, unit(delta, "delta"), sigma};
}

TransformId TransformId::ch44a() { return {TransformKind::CH44A, 0.0, 0.0}; }
TransformId TransformId::ch44b() { return {TransformKind::CH44B, 0.0, 0.0}; }
TransformId TransformId::ch55(double delta) { return {TransformKind::CH55, unit(delta, "delta"), 0.0}; }
TransformId TransformId::ch56(double delta) { return {TransformKind::CH56, unit(delta, "delta"), 0.0}; }

TransformId TransformId::parse(const std::string& name, double delta, double sigma) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "CH22") return ch22(delta);
    if (up == "CH32") return ch32(delta, sigma);
    if (up == "CH44A") return ch44a();
    if (up == "CH44B") return ch44b();
    if (up == "CH55") return ch55(delta);
    if (up == "CH56") return ch56(delta);
    fail(ErrorCode::ParseError, "unknown transform: " + name);
}

std::string TransformId::name() const {
    switch (kind_) {
    case TransformKind::CH22: return "CH22";
    case TransformKind::CH32: return "CH32";
    case TransformKind::CH44A: return "CH44A";
    case TransformKind::CH44B: return "CH44B";
    case TransformKind::CH55: return "CH55";
    case TransformKind::CH56: return "CH56";
    }
    return "?";
}

double apply_time(const TransformId& tr, double t) {
    const double d = tr.delta();
    switch (tr.kind()) {
    case TransformKind::CH22: return d * std::expm1(d * t);
    case TransformKind::CH32: return d / tr.sigma() * std::expm1(d * tr.sigma() * t);
    default: return t;
    }
}

double apply_time_inverse(const TransformId& tr, double t) {
    const double d = tr.delta();
    double arg;
    switch (tr.kind()) {
    case TransformKind::CH22: arg = d * t; break;
    case TransformKind::CH32: arg = d * tr.sigma() * t; break;
    default: return t;
    }
    if (!(arg > -1.0)) fail(ErrorCode::DomainError, "time lies outside the image of the transform");
    const double l = std::log1p(arg);
    return tr.kind() == TransformKind::CH22 ? d * l : l / (d * tr.sigma());
}

Point apply(const TransformId& tr, Point p) {
    const double d = tr.delta();
    Point q = p;
    switch (tr.kind()) {
    case TransformKind::CH22:
        q.u = p.u - d * p.t;
        break;
    case TransformKind::CH32:
    case TransformKind::CH55:
        q.u = p.u * std::exp(-d * p.t);
        break;
    case TransformKind::CH56:
        q.u = p.u - d * p.t;
        break;
    case TransformKind::CH44A: {
        const double c = std::cosh(p.x / kSqrt3);
        q.u = p.u * c * c * c;
        q.x = kSqrt3 * std::tanh(p.x / kSqrt3);
        break;
    }
    case TransformKind::CH44B: {
        check_trig_domain(p.x);
        const double c = std::cos(p.x / kSqrt3);
        q.u = p.u * c * c * c;
        q.x = kSqrt3 * std::tan(p.x / kSqrt3);
        break;
    }
    }
    q.t = apply_time(tr, p.t);
    return q;
}

Point apply_inverse(const TransformId& tr, Point q) {
    const double d = tr.delta();
    Point p = q;
    p.t = apply_time_inverse(tr, q.t);
    switch (tr.kind()) {
    case TransformKind::CH22:
    case TransformKind::CH56:
        p.u = q.u + d * p.t;
        break;
    case TransformKind::CH32:
    case TransformKind::CH55:
        p.u = q.u * std::exp(d * p.t);
        break;
    case TransformKind::CH44A: {
        if (!(std::abs(q.x) < kSqrt3)) fail(ErrorCode::DomainError, "CH44A image needs |x| < sqrt(3)");
        p.x = kSqrt3 * std::atanh(q.x / kSqrt3);
        const double c = std::cosh(p.x / kSqrt3);
        p.u = q.u / (c * c * c);
        break;
    }
    case TransformKind::CH44B: {
        p.x = kSqrt3 * std::atan(q.x / kSqrt3);
        const double c = std::cos(p.x / kSqrt3);
        p.u = q.u / (c * c * c);
        break;
    }
    }
    return p;
}

namespace {

template <class F>
Layer map_layer(const Layer& layer, F f) {
    Layer out = layer;
    for (std::size_t i = 0; i < layer.size(); ++i) {
        const Point q = f(Point{layer.t, layer.x[i], layer.u[i]});
        out.x[i] = q.x;
        out.u[i] = q.u;
        out.t = q.t;
    }
    if (layer.size() == 0) out.t = f(Point{layer.t, 0.0, 0.0}).t;
    return out;
}

}  // namespace

Layer apply(const TransformId& tr, const Layer& layer) {
    return map_layer(layer, [&](Point p) { return apply(tr, p); });
}

Layer apply_inverse(const TransformId& tr, const Layer& layer) {
    return map_layer(layer, [&](Point p) { return apply_inverse(tr, p); });
}

std::vector<Layer> transform_solution(const TransformId& tr, std::span<const Layer> layers) {
    std::vector<Layer> out;
    out.reserve(layers.size());
    for (const Layer& l : layers) out.push_back(apply(tr, l));
    return out;
}

std::vector<Layer> inverse_transform_solution(const TransformId& tr,
                                              std::span<const Layer> layers) {
    std::vector<Layer> out;
    out.reserve(layers.size());
    for (const Layer& l : layers) out.push_back(apply_inverse(tr, l));
    return out;
}

TimeMesh transform_time_mesh(const TransformId& tr, const TimeMesh& mesh) {
    TimeMesh out = mesh;
    for (double& t : out.times) t = apply_time(tr, t);
    return out;
}

}  // namespace heatsym
