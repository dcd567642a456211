#include <doctest.h>

#include <cmath>

#include "heatsym/errors.hpp"
#include "heatsym/meshes.hpp"
#include "heatsym/transforms.hpp"
#include "oracles.hpp"

using namespace heatsym;

TEST_CASE("uniform time mesh") {
    const TimeMesh m = uniform_time(2.0, 8);
    REQUIRE(m.steps() == 8);
    CHECK(m.times.back() == 2.0);
    for (std::size_t n = 0; n < m.steps(); ++n) CHECK(m.tau(n) == doctest::Approx(0.25));
    CHECK_THROWS_AS(uniform_time(0.0, 4), Error);
    CHECK_THROWS_AS(uniform_time(1.0, 0), Error);
}

TEST_CASE("log time meshes become uniform under the matching change of time") {
    for (double d : {1.0, -1.0}) {
        for (double sigma : {1.0, 2.0, -4.0 / 3.0}) {
            CAPTURE(d);
            CAPTURE(sigma);
            const TimeMesh m = log_time_mesh(d, sigma, 1.5, 30);
            CHECK(m.times.front() == 0.0);
            CHECK(m.times.back() == 1.5);
            const TimeMesh image = transform_time_mesh(TransformId::ch32(d, sigma), m);
            for (std::size_t n = 1; n < image.steps(); ++n)
                CHECK(image.tau(n) == doctest::Approx(image.tau(0)).epsilon(1e-10));
        }
        const TimeMesh e = transform_time_mesh(TransformId::ch22(d), log_time_mesh(d, 1.0, 20));
        for (std::size_t n = 1; n < e.steps(); ++n) CHECK(e.tau(n) == doctest::Approx(e.tau(0)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(log_time_mesh(2.0, 1.0, 10), Error);
}

TEST_CASE("mass mesh agrees with plain bisection") {
    auto u0 = [](double x) { return 1.0 + std::exp(-x * x); };
    const Layer layer = init_mass_mesh(u0, -4.0, 0.2, 41);
    const auto ref = oracle::bisection_mass_mesh(u0, -4.0, 0.2, 41);
    REQUIRE(layer.size() == ref.size());
    REQUIRE(layer.s);
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(layer.x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
        CHECK(layer.u[i] == doctest::Approx(u0(layer.x[i])));
        CHECK((*layer.s)[i] == doctest::Approx(0.2 * i));
    }
    CHECK_NOTHROW(layer.validate());
    CHECK_THROWS_AS(init_mass_mesh([](double) { return -1.0; }, 0.0, 0.1, 5), Error);
}

TEST_CASE("density mesh has constant cells") {
    const Layer l = init_density_mesh([](double) { return 2.0; }, -1.0, 0.1, 11, 0.5);
    for (std::size_t i = 0; i + 1 < l.size(); ++i) CHECK(l.x[i + 1] - l.x[i] == doctest::Approx(0.2));
    for (double r : *l.rho) CHECK(r == 0.5);
}

TEST_CASE("layer validation") {
    Layer l = uniform_layer(0.0, 0.0, 1.0, 5, [](double x) { return x; });
    CHECK(l.x.back() == 1.0);
    CHECK_NOTHROW(l.validate());
    l.x[2] = l.x[1];
    CHECK_THROWS_AS(l.validate(), Error);
    l = uniform_layer(0.0, 0.0, 1.0, 5, [](double x) { return x; });
    l.u.pop_back();
    CHECK_THROWS_AS(l.validate(), Error);
}
