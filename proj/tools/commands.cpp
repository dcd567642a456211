#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include "heatsym/conservation.hpp"
#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"
#include "heatsym/solution_io.hpp"
#include "heatsym/symmetry.hpp"
#include "heatsym/transforms.hpp"

namespace cli {

using namespace heatsym;

namespace {

// Steps one layer at a time so that failures can name the step.
std::vector<Layer> integrate(const RunConfig& cfg, const SchemeParams& p, const TimeMesh& mesh) {
    std::vector<Layer> layers{initial_layer(cfg)};
    for (std::size_t n = 0; n < mesh.steps(); ++n) {
        try {
            StepResult r = step(cfg.scheme, p, layers.back(), mesh.tau(n));
            r.layer.t = mesh.times[n + 1];
            layers.push_back(std::move(r.layer));
        } catch (const Error& e) {
            // drop the "Code: " prefix, the rethrow adds it back
            std::string detail = e.what();
            detail.erase(0, to_string(e.code()).size() + 2);
            throw Error(e.code(), "step " + std::to_string(n + 1) + " (t = " +
                                      std::to_string(mesh.times[n]) + "): " + detail);
        }
    }
    return layers;
}

bool solver_error(const Error& e) {
    switch (e.code()) {
    case ErrorCode::SolverDiverged:
    case ErrorCode::StabilityBreach:
    case ErrorCode::DomainError:
    case ErrorCode::NonpositiveDensity:
    case ErrorCode::FlowBlowup: return true;
    default: return false;
    }
}

int report(const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return solver_error(e) ? SolverFailure : BadConfig;
}

// Random admissible stencil for the audit: random positive lower data and
// upper neighbours, upper centre completed by the scheme.
Stencil admissible_stencil(SchemeId id, const SchemeParams& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> T(0.1, 0.6), Tau(0.002, 0.01), X(-1.0, 1.0), H(0.05, 0.2),
        U(0.6, 1.4), R(-1.0, 1.0), Rho(0.7, 1.3);
    const Geometry g = traits(id).geometry;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double t = T(rng), tau = Tau(rng), x = X(rng), u = U(rng);
        const double hm = H(rng);
        const double hp = g == Geometry::OrthogonalUniform ? hm : H(rng);
        auto near = [&](double v) { return v * (1.0 + 0.15 * R(rng)); };
        const std::array<double, 3> lo{near(u), u, near(u)};
        const std::array<double, 3> up{near(lo[0]), near(u), near(lo[2])};
        Stencil s;
        if (g == Geometry::OrthogonalUniform || g == Geometry::OrthogonalNonuniform) {
            s = Stencil::orthogonal(t, tau, x, hm, hp, lo, up);
        } else if (g == Geometry::Moving) {
            s = Stencil::moving(t, tau, x, hm, hp, 0.0, hm * (1 + 0.05 * R(rng)), hp * (1 + 0.05 * R(rng)), lo, up);
        } else {
            const double s0 = X(rng), hsm = H(rng), hsp = id == SchemeId::TS5U ? hsm : H(rng);
            std::array<double, 6> rho;
            for (double& r : rho) r = Rho(rng);
            s = Stencil::moving(t, tau, x, hsm / rho[0], hsp / rho[1], 0.0, hsm / rho[3], hsp / rho[4], lo, up);
            const double col[3] = {s0 - hsm, s0, s0 + hsp};
            for (std::size_t i = 0; i < 6; ++i) s.nodes[i].s = col[i % 3], s.nodes[i].rho = rho[i];
        }
        try {
            complete_stencil(id, p, s);
            return s;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DomainError && e.code() != ErrorCode::StabilityBreach) throw;
        }
    }
    fail(ErrorCode::SolverDiverged, "could not draw an admissible stencil");
}

}  // namespace

int cmd_run(const RunConfig& cfg) {
    try {
        const auto layers = integrate(cfg, scheme_params(cfg), time_mesh(cfg));
        write_solution_csv(cfg.output_path, layers);
        std::cout << "wrote " << layers.size() << " layers to " << cfg.output_path << "\n";
        return Ok;
    } catch (const Error& e) {
        return report(e);
    }
}

int cmd_audit(const RunConfig& cfg, const AuditOptions& opt) {
    if (opt.trials < 1) {
        std::cerr << "error: trials must be positive\n";
        return BadConfig;
    }
    const SchemeParams p = scheme_params(cfg);
    ModelEntry entry;
    try {
        entry = lookup(cfg.model);
    } catch (const Error& e) {
        return report(e);
    }
    const SchemeBinding* binding = entry.binding(cfg.scheme);
    std::vector<SymmetryGenerator> gens;
    if (opt.generators.empty()) {
        gens = binding->generators;
    } else {
        for (const std::string& label : opt.generators) {
            auto it = std::find_if(entry.generators.begin(), entry.generators.end(),
                                   [&](const SymmetryGenerator& g) { return g.label == label; });
            if (it == entry.generators.end()) {
                std::cerr << "error: " << model_key(entry.model) << " has no generator " << label << "\n";
                return BadConfig;
            }
            gens.push_back(*it);
        }
    }
    std::mt19937_64 rng(opt.seed);
    std::vector<Stencil> samples;
    try {
        for (int k = 0; k < opt.trials; ++k) samples.push_back(admissible_stencil(cfg.scheme, p, rng));
    } catch (const Error& e) {
        return report(e);
    }
    std::printf("%-6s %-14s %s\n", "gen", "max defect", "status");
    bool all = true;
    for (const auto& g : gens) {
        double worst = 0;
        std::string note;
        for (const Stencil& s : samples) {
            for (double e : opt.eps) {
                try {
                    worst = std::max(worst, invariance_defect(cfg.scheme, p, g, s, e));
                } catch (const Error& err) {
                    worst = INFINITY;
                    note = std::string(" (") + std::string(to_string(err.code())) + ")";
                }
            }
        }
        const bool ok = worst < opt.threshold;
        all = all && ok;
        std::printf("%-6s %-14.6e %s%s\n", g.label.c_str(), worst, ok ? "pass" : "FAIL", note.c_str());
    }
    return all ? Ok : AboveThreshold;
}

int cmd_convergence(const RunConfig& cfg, int refinements, double lambda) {
    if (refinements < 1) {
        std::cerr << "error: refinements must be at least 1\n";
        return BadConfig;
    }
    if (!(lambda > 0)) {
        std::cerr << "error: lambda must be positive\n";
        return BadConfig;
    }
    const auto exact = exact_solution(cfg);
    const Geometry g = traits(cfg.scheme).geometry;
    if (!exact || g != Geometry::OrthogonalUniform) {
        std::cerr << "error: convergence needs an orthogonal uniform scheme for the heat equation "
                     "with a gaussian or two_gaussians profile\n";
        return BadConfig;
    }
    RunConfig c = cfg;
    c.boundary = BoundaryKind::Exact;
    const double h0 = (cfg.x_right - cfg.x_left) / (cfg.nodes - 1);
    std::printf("%-12s %-14s %s\n", "h", "max error", "order");
    double prev = 0, order = 0;
    for (int r = 0; r <= refinements; ++r) {
        const double h = h0 / std::pow(2.0, r);
        c.nodes = (cfg.nodes - 1) * (1 << r) + 1;
        c.steps = static_cast<int>(std::lround(cfg.T / (lambda * h * h)));
        c.time_mesh = TimeMeshKind::Uniform;
        try {
            const auto layers = integrate(c, scheme_params(c), time_mesh(c));
            const Layer& last = layers.back();
            double err = 0;
            for (std::size_t i = 0; i < last.size(); ++i)
                err = std::max(err, std::abs(last.u[i] - (*exact)(last.t, last.x[i])));
            if (r == 0) {
                std::printf("%-12.6g %-14.6e -\n", h, err);
            } else {
                order = std::log2(prev / err);
                std::printf("%-12.6g %-14.6e %.4f\n", h, err, order);
            }
            prev = err;
        } catch (const Error& e) {
            return report(e);
        }
    }
    return order >= 1.8 ? Ok : CheckFailed;
}

int cmd_conserve_check(const RunConfig& cfg, double tol) {
    const SchemeParams p = scheme_params(cfg);
    std::vector<Layer> layers;
    try {
        layers = integrate(cfg, p, time_mesh(cfg));
    } catch (const Error& e) {
        return report(e);
    }
    // CSV report on stdout, verdicts on stderr
    std::vector<ConservationLaw> laws;
    if (traits(cfg.scheme).geometry != Geometry::Mass) laws = {ConservationLaw::TotalHeatOrthogonal};
    else if (cfg.scheme == SchemeId::SH31N) laws = {ConservationLaw::TotalMass, ConservationLaw::FirstMoment};
    else laws = {ConservationLaw::TotalMass};

    auto name = [](ConservationLaw law) {
        switch (law) {
        case ConservationLaw::TotalMass: return "total_mass";
        case ConservationLaw::FirstMoment: return "first_moment";
        case ConservationLaw::TotalHeatOrthogonal: return "total_heat";
        }
        return "";
    };
    bool ok = true;
    std::printf("law,step,defect\n");
    for (ConservationLaw law : laws) {
        const auto rep = conservation_report(law, layers, p);
        for (std::size_t n = 0; n < rep.per_step_defect.size(); ++n)
            std::printf("%s,%zu,%.17g\n", name(law), n + 1, rep.per_step_defect[n]);
        switch (law) {
        case ConservationLaw::TotalMass:
            ok = ok && rep.max_defect == 0.0;
            std::fprintf(stderr, "total mass drift %.6e (must be 0)\n", rep.max_defect);
            break;
        case ConservationLaw::FirstMoment:
            ok = ok && rep.max_defect < tol;
            std::fprintf(stderr, "first moment defect %.6e (tol %.1e)\n", rep.max_defect, tol);
            break;
        case ConservationLaw::TotalHeatOrthogonal:
            // no exact discrete law on orthogonal meshes; informational only
            std::fprintf(stderr, "total heat drift %.6e (informational)\n", rep.max_defect);
            break;
        }
    }
    return ok ? Ok : AboveThreshold;
}

int cmd_transform(const std::string& name, double delta, double sigma, bool inverse,
                  const std::string& input, const std::string& output) {
    try {
        const TransformId tr = TransformId::parse(name, delta, sigma);
        const auto layers = read_solution_csv(input);
        const auto out = inverse ? inverse_transform_solution(tr, layers) : transform_solution(tr, layers);
        write_solution_csv(output, out);
        std::cout << "wrote " << out.size() << " layers to " << output << "\n";
        return Ok;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadConfig;
    }
}

int cmd_residual_check(const RunConfig& cfg, const std::string& input, double tol) {
    try {
        const auto layers = read_solution_csv(input);
        const double r = max_residual(cfg.scheme, scheme_params(cfg), layers);
        std::printf("%s max normalized residual: %.6e\n", std::string(to_string(cfg.scheme)).c_str(), r);
        return r < tol ? Ok : AboveThreshold;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BadConfig;
    }
}

int cmd_list_models() {
    for (const HeatModel& m : list_models()) {
        const ModelEntry e = lookup(m);
        std::cout << model_key(e.model) << "\n  generators:";
        for (const auto& g : e.generators) std::cout << " " << g.label;
        std::cout << "\n  schemes:";
        for (SchemeId id : e.schemes()) std::cout << " " << to_string(id);
        if (!e.transforms.empty()) {
            std::cout << "\n  transforms:";
            for (const auto& t : e.transforms) std::cout << " " << t.transform.name() << "->" << model_key(t.target);
        }
        std::cout << "\n";
    }
    return Ok;
}

}  // namespace cli
