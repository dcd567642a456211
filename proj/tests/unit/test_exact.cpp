#include <doctest.h>

#include <cmath>
#include <vector>

#include "heatsym/exact_solutions.hpp"
#include "oracles.hpp"

using namespace heatsym;

TEST_CASE("the kernel solves the heat equation") {
    const KernelSolution k{2.0, 0.5, 1.0};
    for (double t : {0.0, 0.3, 2.0})
        for (double x : {-3.0, 0.0, 0.7, 4.0}) CHECK(std::abs(oracle::kernel_heat_defect(k, t, x)) < 1e-7);
    CHECK(kernel_value(k, 0.0, 1.0) == doctest::Approx(2.0));
}

TEST_CASE("kernel mesh follows the trajectories of a single kernel") {
    const KernelSolution k{1.0, 2.0, -1.0};
    const SuperposedKernels single{1.0, 0.0, k.t0, 1.0, k.a, 0.0};
    const std::vector<double> times{0.0, 0.5, 1.0, 3.0};
    for (double x0 : {-4.0, 0.5, 3.0}) {
        const auto path = oracle::superposition_trajectory(single, x0, times);
        for (std::size_t n = 0; n < times.size(); ++n) {
            const double x = kernel_mesh(k, std::vector<double>{x0}, times[n])[0];
            CHECK(x == doctest::Approx(path[n]).epsilon(1e-9));
        }
    }
}

TEST_CASE("trajectory velocity is -2 u_x / u") {
    const SuperposedKernels sp{1.0, 0.7, 10.0, 6.0, -8.0, 8.0};
    for (double t : {0.0, 2.0})
        for (double x : {-10.0, -1.0, 0.0, 5.0}) {
            const double h = 1e-4;
            const double ux = (superposition_value(sp, t, x + h) - superposition_value(sp, t, x - h)) / (2 * h);
            CHECK(superposition_trajectory_rhs(sp, t, x) ==
                  doctest::Approx(-2.0 * ux / superposition_value(sp, t, x)).epsilon(1e-7));
        }
}

TEST_CASE("a marched reduced profile satisfies the reduced residuals") {
    const double c = -0.5, tau = 0.05;
    const auto prof = oracle::march_reduced(Y3Branch::PlusHPlus, c, tau, 0.2, 1.0, 0.98, 12);
    REQUIRE(prof.x.size() == 12);
    for (std::size_t i = 1; i + 1 < prof.x.size(); ++i) {
        const auto [mesh, value] = reduced_Y3_residuals(prof.x[i] - prof.x[i - 1], prof.x[i + 1] - prof.x[i],
                                                        prof.f[i - 1], prof.f[i], prof.f[i + 1], c, tau,
                                                        Y3Branch::PlusHPlus);
        CHECK(std::abs(mesh) < 1e-10);
        CHECK(std::abs(value) < 1e-10);
    }
    CHECK_THROWS(reduced_Y3_residuals(-0.1, 0.1, 1, 1, 1, 0, 0.01, Y3Branch::Zero));
}

TEST_CASE("the two moving branches are mirror images") {
    // x -> -x swaps the neighbours and flips the sign of the node drift
    const auto [m1, v1] = reduced_Y3_residuals(0.2, 0.3, 1.1, 1.0, 0.9, 0.4, 0.02, Y3Branch::PlusHPlus);
    const auto [m2, v2] = reduced_Y3_residuals(0.3, 0.2, 0.9, 1.0, 1.1, 0.4, 0.02, Y3Branch::MinusHMinus);
    CHECK(m1 == doctest::Approx(-m2));
    CHECK(v1 == doctest::Approx(v2));
}
