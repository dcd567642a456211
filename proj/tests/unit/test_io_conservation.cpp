#include <doctest.h>

#include <cmath>
#include <sstream>

#include "heatsym/conservation.hpp"
#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"
#include "heatsym/solution_io.hpp"

using namespace heatsym;

TEST_CASE("solution csv round-trips exactly") {
    std::vector<Layer> layers{uniform_layer(0.0, -1, 1, 7, [](double x) { return std::exp(x) / 3; }),
                              uniform_layer(0.1, -1, 1, 7, [](double x) { return std::sin(x) + 2; })};
    std::stringstream ss;
    write_solution_csv(ss, layers);
    const auto back = read_solution_csv(ss);
    REQUIRE(back.size() == 2);
    for (std::size_t n = 0; n < 2; ++n) {
        CHECK(back[n].t == layers[n].t);
        CHECK(back[n].x == layers[n].x);
        CHECK(back[n].u == layers[n].u);
        CHECK_FALSE(back[n].s);
    }
}

TEST_CASE("mass layers keep s and rho") {
    const Layer l = init_mass_mesh([](double x) { return 1 + x * x; }, -1, 0.3, 9);
    std::stringstream ss;
    write_solution_csv(ss, {l});
    const auto back = read_solution_csv(ss);
    REQUIRE(back.size() == 1);
    REQUIRE(back[0].s);
    CHECK(*back[0].s == *l.s);
    CHECK(back[0].rho.has_value() == l.rho.has_value());
}

TEST_CASE("malformed csv is a parse error") {
    for (const char* text : {"", "t,i,x,u\n0,0,abc,1\n", "a,b\n1,2\n"}) {
        std::stringstream ss(text);
        try {
            read_solution_csv(ss);
            FAIL("accepted: " << text);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ParseError);
        }
    }
}

TEST_CASE("conserved quantities of a layer") {
    Layer l = uniform_layer(0, 0, 2, 5, [](double) { return 3.0; });
    CHECK(total_heat_orthogonal(l) == doctest::Approx(6.0));
    CHECK_THROWS_AS(total_mass(l), Error);

    const Layer m = init_mass_mesh([](double) { return 2.0; }, 0, 0.5, 5);
    CHECK(total_mass(m) == doctest::Approx(2.0));
    double moment = 0;
    for (double x : m.x) moment += x * 0.5;
    CHECK(first_moment(m) == doctest::Approx(moment));
}

TEST_CASE("the mass scheme conserves mass and the first moment") {
    SchemeParams p;
    p.model = representative_model(SchemeId::SH31N);
    p.weight_alpha = 0.5;
    const Layer l0 = init_mass_mesh([](double x) { return 1 + std::exp(-x * x); }, -3, 0.25, 25);
    const auto layers = run(SchemeId::SH31N, p, l0, uniform_time(0.1, 20));
    CHECK(conservation_report(ConservationLaw::TotalMass, layers, p).max_defect == 0.0);
    const auto moment = conservation_report(ConservationLaw::FirstMoment, layers, p);
    CHECK(moment.per_step_defect.size() == 20);
    CHECK(moment.max_defect < 1e-10);
    CHECK_THROWS_AS(first_moment_defect(l0, uniform_layer(0, 0, 1, 5, [](double) { return 1.0; }), p), Error);
}

TEST_CASE("density columns survive a round trip") {
    const Layer l = init_density_mesh([](double x) { return 1 + x * x; }, -1, 0.3, 9, 0.8);
    std::stringstream ss;
    write_solution_csv(ss, {l});
    const auto back = read_solution_csv(ss);
    REQUIRE(back[0].rho);
    CHECK(*back[0].rho == *l.rho);

    std::stringstream partial("t,i,x,s,rho,u\n0,0,0,0,1,1\n0,1,1,1,,1\n");
    CHECK_THROWS_AS(read_solution_csv(partial), Error);
}
