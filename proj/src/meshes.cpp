#include "heatsym/meshes.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "heatsym/errors.hpp"

namespace heatsym {

void Layer::validate() const {
    if (u.size() != x.size()) fail(ErrorCode::DomainError, "layer x and u lengths differ");
    if (s && s->size() != x.size()) fail(ErrorCode::DomainError, "layer s length differs");
    if (rho && rho->size() != x.size()) fail(ErrorCode::DomainError, "layer rho length differs");
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (!(x[i + 1] > x[i]))
            fail(ErrorCode::DomainError, "layer nodes not increasing at index " + std::to_string(i));
    if (rho)
        for (double r : *rho)
            if (!(r > 0)) fail(ErrorCode::NonpositiveDensity, "density must be positive");
}

namespace {

void check_mesh_args(double T, int k) {
    if (!(T > 0) || k < 1) fail(ErrorCode::InvalidParameter, "time mesh needs T > 0 and k >= 1");
}

}  // namespace

TimeMesh uniform_time(double T, int k) {
    check_mesh_args(T, k);
    TimeMesh m;
    m.times.resize(k + 1);
    for (int n = 0; n <= k; ++n) m.times[n] = T * n / k;
    m.times[k] = T;
    return m;
}

TimeMesh log_time_mesh(double delta, double T, int k) { return log_time_mesh(delta, 1.0, T, k); }

TimeMesh log_time_mesh(double delta, double sigma, double T, int k) {
    check_mesh_args(T, k);
    if (std::abs(std::abs(delta) - 1.0) > 1e-12)
        fail(ErrorCode::InvalidParameter, "delta must be +1 or -1");
    if (sigma == 0.0) fail(ErrorCode::InvalidParameter, "sigma must be nonzero");
    const double ds = delta * sigma;
    const double span = std::expm1(ds * T);
    TimeMesh m;
    m.times.resize(k + 1);
    for (int n = 0; n <= k; ++n) m.times[n] = std::log1p(span * n / k) / ds;
    m.times[k] = T;
    return m;
}

Layer uniform_layer(double t, double x_left, double x_right, int nodes,
                    const std::function<double(double)>& u0) {
    if (nodes < 3 || !(x_right > x_left))
        fail(ErrorCode::InvalidParameter, "layer needs at least 3 nodes on a nonempty interval");
    Layer layer;
    layer.t = t;
    layer.x.resize(nodes);
    layer.u.resize(nodes);
    const double h = (x_right - x_left) / (nodes - 1);
    for (int i = 0; i < nodes; ++i) {
        layer.x[i] = i + 1 == nodes ? x_right : x_left + i * h;
        layer.u[i] = u0(layer.x[i]);
    }
    return layer;
}

Layer init_mass_mesh(const std::function<double(double)>& u0, double x_left, double h_s,
                     int count) {
    if (!(h_s > 0) || count < 1) fail(ErrorCode::InvalidParameter, "mass mesh needs h_s > 0");
    auto density = [&](double x) {
        const double v = u0(x);
        if (!(v > 0)) fail(ErrorCode::NonpositiveDensity, "u0 must be positive on the mass grid");
        return v;
    };
    Layer layer;
    layer.x = {x_left};
    layer.u = {density(x_left)};
    layer.s = std::vector<double>{0.0};
    for (int i = 1; i < count; ++i) {
        const double xi = layer.x.back();
        const double inv = 1.0 / layer.u.back();
        // g(d) = d/h_s - (inv + 1/u0(xi + d))/2 is increasing near the root
        // as long as u0 does not vary too wildly; bracket by growth.
        auto g = [&](double d) { return d / h_s - 0.5 * (inv + 1.0 / density(xi + d)); };
        double lo = 0.0;
        double hi = h_s * inv;
        while (g(hi) < 0) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e12) fail(ErrorCode::DomainError, "mass mesh step did not bracket");
        }
        std::uintmax_t iters = 200;
        auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::max(1.0, std::abs(a)); };
        const auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, tol, iters);
        const double d = 0.5 * (a + b);
        layer.x.push_back(xi + d);
        layer.u.push_back(density(xi + d));
        layer.s->push_back(i * h_s);
    }
    return layer;
}

Layer init_density_mesh(const std::function<double(double)>& u0, double x_left, double h_s,
                        int count, double rho0) {
    if (!(h_s > 0) || count < 3) fail(ErrorCode::InvalidParameter, "density mesh needs h_s > 0");
    if (!(rho0 > 0)) fail(ErrorCode::NonpositiveDensity, "density must be positive");
    Layer layer;
    layer.s = std::vector<double>(count);
    layer.rho = std::vector<double>(count, rho0);
    layer.x.resize(count);
    layer.u.resize(count);
    for (int i = 0; i < count; ++i) {
        layer.x[i] = x_left + i * h_s / rho0;
        (*layer.s)[i] = x_left * rho0 + i * h_s;
        layer.u[i] = u0(layer.x[i]);
    }
    return layer;
}

}  // namespace heatsym
