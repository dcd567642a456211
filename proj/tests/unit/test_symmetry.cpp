#include <doctest.h>

#include <cmath>
#include <random>

#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"
#include "heatsym/symmetry.hpp"
#include "samplers.hpp"

using namespace heatsym;

namespace {

SymmetryGenerator heat_generator(const std::string& label) {
    for (const auto& g : lookup(canonical(parse_model_key("K=1,Q=0"))).generators)
        if (g.label == label) return g;
    FAIL("missing generator " << label);
    return {};
}

}  // namespace

TEST_CASE("flows match the closed-form heat group") {
    const Point p{0.3, -0.7, 1.2};
    for (double e : {0.1, -0.25, 0.4}) {
        CAPTURE(e);
        const Point x3 = flow_point(heat_generator("X3"), e, p);
        CHECK(x3.t == doctest::Approx(p.t).epsilon(1e-13));
        CHECK(x3.x == doctest::Approx(p.x + 2 * e * p.t).epsilon(1e-12));
        CHECK(x3.u == doctest::Approx(p.u * std::exp(-e * p.x - e * e * p.t)).epsilon(1e-12));

        const Point x4 = flow_point(heat_generator("X4"), e, p);
        CHECK(x4.t == doctest::Approx(p.t * std::exp(2 * e)).epsilon(1e-12));
        CHECK(x4.x == doctest::Approx(p.x * std::exp(e)).epsilon(1e-12));

        const double d = 1 - 4 * e * p.t;
        const Point x5 = flow_point(heat_generator("X5"), e, p);
        CHECK(x5.t == doctest::Approx(p.t / d).epsilon(1e-12));
        CHECK(x5.x == doctest::Approx(p.x / d).epsilon(1e-12));
        CHECK(x5.u == doctest::Approx(p.u * std::sqrt(d) * std::exp(-e * p.x * p.x / d)).epsilon(1e-12));
    }
}

TEST_CASE("flow failures") {
    // the projective flow reaches t = infinity at eps = 1/(4t)
    CHECK_THROWS_WITH_AS(flow_point(heat_generator("X5"), 0.5, Point{1.0, 0.0, 1.0}),
                         doctest::Contains("FlowBlowup"), Error);

    const auto tilt = SymmetryGenerator::make("tilt", [](double, double x, double) { return x; }, {}, {});
    const Stencil s = Stencil::orthogonal(1.0, 0.1, 0.0, 0.2, 0.2, {1, 1, 1}, {1, 1, 1});
    try {
        flow_stencil(tilt, 0.1, s);
        FAIL("expected LayerSkew");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LayerSkew);
    }
}

TEST_CASE("mesh conditions for the heat algebra on uniform stencils") {
    std::mt19937_64 rng(5);
    std::vector<Stencil> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(sampler::random_stencil(Geometry::OrthogonalUniform, rng));

    for (const char* label : {"X1", "X2", "X4", "X6"}) {
        const auto r = check_mesh_conditions(heat_generator(label), samples);
        CAPTURE(label);
        CHECK(r.uniform_t);
        CHECK(r.uniform_x);
        CHECK(r.orthogonal);
        CHECK(r.flat_layers);
    }
    const auto galilei = check_mesh_conditions(heat_generator("X3"), samples);
    CHECK_FALSE(galilei.orthogonal);
    CHECK(galilei.flat_layers);
    const auto projective = check_mesh_conditions(heat_generator("X5"), samples);
    CHECK_FALSE(projective.uniform_t);
    CHECK_FALSE(projective.orthogonal);
}

TEST_CASE("solution stencils stay on the scheme under their bound generators") {
    std::mt19937_64 rng(9);
    for (SchemeId id : kAllSchemes) {
        const auto p = sampler::params_for(id);
        const auto b = *lookup(p.model).binding(id);
        const Stencil s = sampler::solution_stencil(id, p, rng);
        for (const auto& g : b.generators) {
            CAPTURE(to_string(id));
            CAPTURE(g.label);
            CHECK(invariance_defect(id, p, g, s, 0.05) < 1e-8);
        }
    }
}

TEST_CASE("directional defect of an invariant and a non-invariant") {
    const Stencil s = Stencil::orthogonal(0.4, 0.01, 0.2, 0.1, 0.1, {1.0, 1.1, 1.3}, {1.05, 1.12, 1.28});
    const auto x2 = heat_generator("X2");
    auto step = [](const Stencil& st) { return st.h_plus(); };
    auto position = [](const Stencil& st) { return st.x(); };
    CHECK(invariant_directional_defect(step, x2, s) < 1e-10);
    CHECK(invariant_directional_defect(position, x2, s) > 0.1);
}
