#include <doctest.h>

#include <random>

#include "heatsym/model_catalog.hpp"
#include "oracles.hpp"

using namespace heatsym;

TEST_CASE("every catalog generator solves the determining equations") {
    std::mt19937_64 rng(11);
    for (const HeatModel& m : list_models()) {
        const ModelEntry e = lookup(m);
        const auto coeffs = oracle::coefficients(m);
        for (const auto& g : e.generators) {
            CAPTURE(model_key(m));
            CAPTURE(g.label);
            CHECK(oracle::determining_defect(g, coeffs, rng) < 1e-6);
        }
    }
}

TEST_CASE("a heat generator is not a symmetry of a nonlinear case") {
    std::mt19937_64 rng(12);
    const auto heat = lookup(canonical(parse_model_key("K=1,Q=0")));
    const auto exp_case = oracle::coefficients(lookup(canonical(parse_model_key("K=e^u,Q=0"))).model);
    for (const auto& g : heat.generators) {
        if (g.label == "X3" || g.label == "X5") {
            CAPTURE(g.label);
            CHECK(oracle::determining_defect(g, exp_case, rng) > 1e-3);
        }
    }
}

TEST_CASE("algebra dimensions") {
    CHECK(lookup(canonical(parse_model_key("K=1,Q=0"))).generators.size() == 6);
    CHECK(lookup(representative_model(SchemeId::SH11)).generators.size() == 2);
    CHECK(lookup(representative_model(SchemeId::SH21)).generators.size() == 4);
}

TEST_CASE("mesh requirements of the classes") {
    const auto all = requirements({MeshClass::OrthogonalUniform});
    CHECK(all.uniform_t);
    CHECK(all.uniform_x);
    const auto moving = requirements({MeshClass::MovingFlatLayers});
    CHECK_FALSE(moving.orthogonal);
    CHECK(moving.flat_layers);
}
