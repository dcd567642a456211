#include "heatsym/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

const std::vector<double>& mass_grid(const Layer& l) {
    if (!l.s) fail(ErrorCode::MissingMassGrid, "layer has no mass coordinate");
    if (l.size() < 2) fail(ErrorCode::DomainError, "mass grid needs two nodes");
    return *l.s;
}

double mass_step(const Layer& l) {
    const auto& s = mass_grid(l);
    return (s.back() - s.front()) / static_cast<double>(s.size() - 1);
}

}  // namespace

double total_mass(const Layer& layer) {
    const auto& s = mass_grid(layer);
    return s.back() - s.front();
}

double first_moment(const Layer& layer) {
    const double hs = mass_step(layer);
    double m = 0.0;
    for (double x : layer.x) m += x * hs;
    return m;
}

double first_moment_defect(const Layer& prev, const Layer& next, const SchemeParams& params) {
    if (prev.size() != next.size() || mass_grid(prev) != mass_grid(next))
        fail(ErrorCode::LayerMismatch, "layers do not share one mass grid");
    const double e = k_exponent(params.model) + 1.0;
    const double a = params.weight_alpha;
    const double tau = next.t - prev.t;
    auto W = [&](std::size_t i) {
        return a * std::pow(prev.u[i], e) + (1.0 - a) * std::pow(next.u[i], e);
    };
    const std::size_t n = prev.size() - 1;
    // ghosts beyond the ends repeat the end values
    const double flux = W(n) - W(0);
    const double expected = -tau / e * flux;
    return std::abs(first_moment(next) - first_moment(prev) - expected);
}

double total_heat_orthogonal(const Layer& layer) {
    double q = 0.0;
    for (std::size_t i = 0; i + 1 < layer.size(); ++i)
        q += 0.5 * (layer.u[i] + layer.u[i + 1]) * (layer.x[i + 1] - layer.x[i]);
    return q;
}

ConservationReport conservation_report(ConservationLaw law, std::span<const Layer> layers,
                                       const SchemeParams& params) {
    ConservationReport r{law, {}, 0.0};
    for (std::size_t k = 0; k + 1 < layers.size(); ++k) {
        const Layer& a = layers[k];
        const Layer& b = layers[k + 1];
        double d = 0.0;
        switch (law) {
        case ConservationLaw::TotalMass: d = std::abs(total_mass(b) - total_mass(a)); break;
        case ConservationLaw::FirstMoment: d = first_moment_defect(a, b, params); break;
        case ConservationLaw::TotalHeatOrthogonal:
            d = std::abs(total_heat_orthogonal(b) - total_heat_orthogonal(a));
            break;
        }
        r.per_step_defect.push_back(d);
        r.max_defect = std::max(r.max_defect, d);
    }
    return r;
}

}  // namespace heatsym
