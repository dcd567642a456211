#include "samplers.hpp"

#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"

namespace sampler {

using namespace heatsym;

SchemeParams params_for(SchemeId id) {
    SchemeParams p;
    p.model = representative_model(id);
    if (id == SchemeId::SH11) {
        p.K_fn = [](double u) { return 1.0 + u * u; };
        p.Q_fn = [](double u) { return u * u * u; };
    }
    if (id == SchemeId::SH12) p.K_fn = [](double u) { return u * u; };
    return p;
}

// Times stay below 0.6 so that the exponential and projective time flows
// exist up to |eps| = 0.2 for every catalog generator.
Stencil random_stencil(Geometry g, std::mt19937_64& rng, bool uniform_s) {
    std::uniform_real_distribution<double> T(0.1, 0.6), tau(0.002, 0.01), X(-1.0, 1.0),
        H(0.05, 0.2), U(0.6, 1.4), R(-1.0, 1.0), Rho(0.7, 1.3);
    const double t = T(rng), k = tau(rng), x = X(rng);
    const double hm = H(rng);
    const double hp = g == Geometry::OrthogonalUniform ? hm : H(rng);
    const double u = U(rng);
    auto near = [&](double v) { return v * (1.0 + 0.15 * R(rng)); };
    const std::array<double, 3> lower{near(u), u, near(u)};
    const std::array<double, 3> upper{near(lower[0]), near(u), near(lower[2])};
    if (g == Geometry::OrthogonalUniform || g == Geometry::OrthogonalNonuniform)
        return Stencil::orthogonal(t, k, x, hm, hp, lower, upper);

    const double dx = 0.3 * hm * R(rng);
    if (g == Geometry::Moving)
        return Stencil::moving(t, k, x, hm, hp, dx, hm * (1 + 0.05 * R(rng)), hp * (1 + 0.05 * R(rng)),
                               lower, upper);

    // mass coordinates: cell lengths are h_s/rho on both layers
    const double s0 = X(rng), hsm = H(rng), hsp = uniform_s ? hsm : H(rng);
    std::array<double, 6> rho;
    for (double& r : rho) r = Rho(rng);
    Stencil s = Stencil::moving(t, k, x, hsm / rho[0], hsp / rho[1], dx, hsm / rho[3], hsp / rho[4],
                                lower, upper);
    const double col[3] = {s0 - hsm, s0, s0 + hsp};
    for (std::size_t i = 0; i < 6; ++i) {
        s.nodes[i].s = col[i % 3];
        s.nodes[i].rho = rho[i];
    }
    return s;
}

Stencil solution_stencil(SchemeId id, const SchemeParams& p, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Stencil s = random_stencil(traits(id).geometry, rng, id == SchemeId::TS5U);
        // start the upper layer straight above the lower one; the scheme moves it
        const double dx = s.dx();
        for (std::size_t i = 3; i < 6; ++i) s.nodes[i].x -= dx;
        try {
            complete_stencil(id, p, s);
            return s;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DomainError && e.code() != ErrorCode::StabilityBreach) throw;
        }
    }
    fail(ErrorCode::SolverDiverged, "no admissible stencil found");
}

}  // namespace sampler
