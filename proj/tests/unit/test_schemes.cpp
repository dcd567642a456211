#include <doctest.h>

#include <cmath>
#include <random>

#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"
#include "heatsym/schemes.hpp"
#include "samplers.hpp"

using namespace heatsym;

TEST_CASE("completed stencils satisfy their scheme") {
    std::mt19937_64 rng(21);
    for (SchemeId id : kAllSchemes) {
        const auto p = sampler::params_for(id);
        for (int k = 0; k < 5; ++k) {
            const Stencil s = sampler::solution_stencil(id, p, rng);
            CAPTURE(to_string(id));
            CHECK(residual_terms(id, p, s).normalized() < 1e-10);
            CHECK(mesh_residual_terms(id, p, s).normalized() < 1e-10);
        }
    }
}

TEST_CASE("normalized residual") {
    CHECK(Residual{0.0, 0.0}.normalized() == 0.0);
    CHECK(Residual{1e-3, 10.0}.normalized() == doctest::Approx(1e-4));
}

TEST_CASE("orthogonal schemes report no drift") {
    std::mt19937_64 rng(2);
    const auto p = sampler::params_for(SchemeId::EQ55A);
    const Stencil s = sampler::solution_stencil(SchemeId::EQ55A, p, rng);
    CHECK(mesh_drift(SchemeId::EQ55A, p, s) == 0.0);
    CHECK(traits(SchemeId::EQ55A).geometry == Geometry::OrthogonalUniform);
    CHECK(traits(SchemeId::SH31N).geometry == Geometry::Mass);
    CHECK(traits(SchemeId::SH22).log_time);
}

TEST_CASE("constant data stays constant for the heat equation") {
    SchemeParams p;
    p.model = canonical(parse_model_key("K=1,Q=0"));
    const Layer l0 = uniform_layer(0.0, -1.0, 1.0, 11, [](double) { return 2.0; });
    for (SchemeId id : {SchemeId::EQ55A, SchemeId::SH54E, SchemeId::SH54I}) {
        const StepResult r = step(id, p, l0, 0.01);
        CAPTURE(to_string(id));
        CHECK(r.layer.t == doctest::Approx(0.01));
        for (double u : r.layer.u) CHECK(u == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(r.diagnostics.max_residual < 1e-10);
    }
}

TEST_CASE("run agrees with repeated steps and leaves small residuals") {
    SchemeParams p;
    p.model = canonical(parse_model_key("K=1,Q=0"));
    const Layer l0 = uniform_layer(0.0, -4.0, 4.0, 41, [](double x) { return std::exp(-x * x); });
    const TimeMesh mesh = uniform_time(0.1, 10);
    const auto layers = run(SchemeId::EQ55A, p, l0, mesh);
    REQUIRE(layers.size() == 11);
    Layer l = l0;
    for (std::size_t n = 0; n < mesh.steps(); ++n) l = step(SchemeId::EQ55A, p, l, mesh.tau(n)).layer;
    for (std::size_t i = 0; i < l.size(); ++i) CHECK(l.u[i] == doctest::Approx(layers.back().u[i]).epsilon(1e-14));
    CHECK(max_residual(SchemeId::EQ55A, p, layers) < 1e-10);
}

TEST_CASE("boundary policies") {
    SchemeParams p;
    p.model = canonical(parse_model_key("K=1,Q=0"));
    const Layer l0 = uniform_layer(0.0, 0.0, 1.0, 11, [](double x) { return 1.0 + x; });
    p.boundary_value = [](double t, double) { return 5.0 + t; };
    const Layer d = step(SchemeId::EQ55A, p, l0, 0.5).layer;
    CHECK(d.u.front() == doctest::Approx(5.5));
    CHECK(d.u.back() == doctest::Approx(5.5));

    p.boundary_value = {};
    p.boundary = BoundaryPolicy::CopyEnds;
    const Layer c = step(SchemeId::EQ55A, p, l0, 0.01).layer;
    CHECK(c.u.front() == c.u[1]);
    CHECK(c.u.back() == c.u[c.size() - 2]);
}

TEST_CASE("a source that blows up is reported") {
    SchemeParams p;
    p.model = representative_model(SchemeId::SH11);
    p.K_fn = [](double) { return 1.0; };
    p.Q_fn = [](double u) { return u * u * u; };
    Layer l = uniform_layer(0.0, -1.0, 1.0, 11, [](double) { return 10.0; });
    bool thrown = false;
    try {
        for (int n = 0; n < 200; ++n) l = step(SchemeId::SH11, p, l, 0.01).layer;
    } catch (const Error& e) {
        thrown = true;
        const auto c = e.code();
        CHECK((c == ErrorCode::StabilityBreach || c == ErrorCode::SolverDiverged || c == ErrorCode::DomainError));
    }
    CHECK(thrown);
}
