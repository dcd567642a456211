#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "heatsym/errors.hpp"
#include "heatsym/model_catalog.hpp"

namespace cli {

using namespace heatsym;

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "model", "sigma", "n", "delta", "alpha", "sign", "scheme", "x_left", "x_right", "nodes",
        "T", "steps", "time_mesh", "initial", "C", "t0", "a", "tg_alpha", "tg_beta", "t1", "t2",
        "tg_a", "tg_b", "constant", "hat_height", "hat_width", "floor", "table", "boundary",
        "weight_alpha", "k_power", "q_power", "output"};
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
    }
}

int integer(const std::string& key, const std::string& text) {
    const double v = number(key, text);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError("'" + key + "' expects an integer");
    return static_cast<int>(v);
}

}  // namespace

KeyValues read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    KeyValues kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        // model keys contain '=' themselves ("model = K=1,Q=0"), so split at the first one
        const std::string value = trim(line.substr(eq + 1));
        const auto& keys = config_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

RunConfig make_config(const KeyValues& values) {
    RunConfig c;
    auto get = [&](const std::string& k) -> const std::string* {
        const auto it = values.find(k);
        return it == values.end() ? nullptr : &it->second;
    };
    auto num = [&](const std::string& k, double& out) {
        if (auto v = get(k)) out = number(k, *v);
    };
    auto opt = [&](const std::string& k, std::optional<double>& out) {
        if (auto v = get(k)) out = number(k, *v);
    };

    try {
        if (auto v = get("scheme")) c.scheme = parse_scheme_id(*v);
        if (auto v = get("model")) {
            c.model = parse_model_key(*v);
        } else {
            c.model = representative_model(c.scheme);
        }
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    opt("sigma", c.model.sigma);
    opt("n", c.model.n);
    opt("delta", c.model.delta);
    opt("alpha", c.model.alpha);
    opt("sign", c.model.sign);
    // unset parameters fall back to the catalog's sample values for the case
    for (const HeatModel& m : list_models()) {
        if (m.k_family != c.model.k_family || m.q_family != c.model.q_family) continue;
        if (!c.model.sigma) c.model.sigma = m.sigma;
        if (!c.model.n) c.model.n = m.n;
        if (!c.model.delta) c.model.delta = m.delta;
        if (!c.model.alpha) c.model.alpha = m.alpha;
        if (!c.model.sign) c.model.sign = m.sign;
        break;
    }

    num("x_left", c.x_left);
    num("x_right", c.x_right);
    if (auto v = get("nodes")) c.nodes = integer("nodes", *v);
    num("T", c.T);
    if (auto v = get("steps")) c.steps = integer("steps", *v);
    if (auto v = get("time_mesh")) {
        const std::string m = lower(*v);
        if (m == "uniform") c.time_mesh = TimeMeshKind::Uniform;
        else if (m == "log") c.time_mesh = TimeMeshKind::Log;
        else throw ConfigError("time_mesh must be uniform or log");
    }
    if (auto v = get("initial")) {
        const std::string m = lower(*v);
        if (m == "gaussian") c.initial = InitialKind::Gaussian;
        else if (m == "two_gaussians") c.initial = InitialKind::TwoGaussians;
        else if (m == "constant") c.initial = InitialKind::Constant;
        else if (m == "hat") c.initial = InitialKind::Hat;
        else if (m == "table") c.initial = InitialKind::Table;
        else throw ConfigError("initial must be gaussian, two_gaussians, constant, hat or table");
    }
    num("C", c.gaussian.C);
    num("t0", c.gaussian.t0);
    num("a", c.gaussian.a);
    num("tg_alpha", c.two_gaussians.alpha);
    num("tg_beta", c.two_gaussians.beta);
    num("t1", c.two_gaussians.t1);
    num("t2", c.two_gaussians.t2);
    num("tg_a", c.two_gaussians.a);
    num("tg_b", c.two_gaussians.b);
    num("constant", c.constant);
    num("hat_height", c.hat_height);
    num("hat_width", c.hat_width);
    num("floor", c.floor);
    if (auto v = get("table")) c.table_path = *v;
    if (auto v = get("boundary")) {
        const std::string m = lower(*v);
        if (m == "hold" || m == "dirichlet") c.boundary = BoundaryKind::Hold;
        else if (m == "copy") c.boundary = BoundaryKind::Copy;
        else if (m == "exact") c.boundary = BoundaryKind::Exact;
        else throw ConfigError("boundary must be hold, copy or exact");
    }
    num("weight_alpha", c.weight_alpha);
    num("k_power", c.k_power);
    num("q_power", c.q_power);
    if (auto v = get("output")) c.output_path = *v;

    if (c.steps < 1) throw ConfigError("steps must be at least 1");
    if (c.nodes < 3) throw ConfigError("nodes must be at least 3");
    if (!(c.T > 0)) throw ConfigError("T must be positive");
    if (!(c.x_right > c.x_left)) throw ConfigError("x_right must exceed x_left");
    if (c.initial == InitialKind::Gaussian && !(c.gaussian.t0 > 0)) throw ConfigError("t0 must be positive");
    if (c.initial == InitialKind::Table && c.table_path.empty()) throw ConfigError("initial=table needs table=<path>");

    try {
        c.model = canonical(c.model);
        validate(c.scheme, scheme_params(c));
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const bool log_scheme = traits(c.scheme).log_time;
    if (!c.time_mesh) c.time_mesh = log_scheme ? TimeMeshKind::Log : TimeMeshKind::Uniform;
    if ((*c.time_mesh == TimeMeshKind::Log) != log_scheme)
        throw ConfigError(std::string("time_mesh does not match scheme ") + std::string(to_string(c.scheme)));
    if (traits(c.scheme).geometry == Geometry::Mass) {
        // tails near zero make the mass cells unbounded
        const auto u0 = initial_profile(c);
        double lo = INFINITY, hi = 0;
        for (int i = 0; i <= 200; ++i) {
            const double v = u0(c.x_left + (c.x_right - c.x_left) * i / 200.0);
            lo = std::min(lo, v), hi = std::max(hi, std::abs(v));
        }
        if (!(lo > 1e-6 * hi))
            throw ConfigError("mass-coordinate schemes need a profile bounded away from zero; set floor > 0");
    }
    // with a closed-form solution at hand the default boundary follows it
    if (!get("boundary") && exact_solution(c)) c.boundary = BoundaryKind::Exact;
    if (c.boundary == BoundaryKind::Exact && !exact_solution(c))
        throw ConfigError("boundary=exact needs the heat equation with a gaussian or two_gaussians profile");
    return c;
}

SchemeParams scheme_params(const RunConfig& cfg) {
    SchemeParams p;
    p.model = cfg.model;
    p.weight_alpha = cfg.weight_alpha;
    if (cfg.model.k_family == KFamily::Arbitrary) {
        const double k = cfg.k_power;
        p.K_fn = [k](double u) { return k == 0.0 ? 1.0 : std::pow(u, k); };
    }
    if (cfg.model.q_family == QFamily::Arbitrary) {
        const double q = cfg.q_power;
        p.Q_fn = [q](double u) { return std::pow(u, q); };
    }
    p.boundary = cfg.boundary == BoundaryKind::Copy ? BoundaryPolicy::CopyEnds : BoundaryPolicy::Dirichlet;
    if (cfg.boundary == BoundaryKind::Exact) p.boundary_value = *exact_solution(cfg);
    return p;
}

TimeMesh time_mesh(const RunConfig& cfg) {
    if (cfg.time_mesh.value_or(TimeMeshKind::Uniform) == TimeMeshKind::Uniform)
        return uniform_time(cfg.T, cfg.steps);
    const double d = cfg.model.delta.value_or(1.0);
    if (cfg.model.k_family == KFamily::Exponential) return log_time_mesh(d, cfg.T, cfg.steps);
    return log_time_mesh(d, k_exponent(cfg.model), cfg.T, cfg.steps);
}

namespace {

std::function<double(double)> table_profile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open table " + path);
    std::vector<std::pair<double, double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, u;
        if (!(ss >> x >> u)) {
            if (pts.empty()) continue;  // header
            throw ConfigError("bad table row: " + line);
        }
        pts.emplace_back(x, u);
    }
    if (pts.size() < 2) throw ConfigError("table needs at least two rows");
    std::sort(pts.begin(), pts.end());
    return [pts](double x) {
        if (x <= pts.front().first) return pts.front().second;
        if (x >= pts.back().first) return pts.back().second;
        const auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -1e300));
        const auto& [x1, u1] = *it;
        const auto& [x0, u0] = *(it - 1);
        return u0 + (u1 - u0) * (x - x0) / (x1 - x0);
    };
}

}  // namespace

std::function<double(double)> initial_profile(const RunConfig& cfg) {
    std::function<double(double)> f;
    switch (cfg.initial) {
    case InitialKind::Gaussian: {
        const KernelSolution k = cfg.gaussian;
        f = [k](double x) { return kernel_value(k, 0.0, x); };
        break;
    }
    case InitialKind::TwoGaussians: {
        const SuperposedKernels sp = cfg.two_gaussians;
        f = [sp](double x) { return superposition_value(sp, 0.0, x); };
        break;
    }
    case InitialKind::Constant: {
        const double c = cfg.constant;
        f = [c](double) { return c; };
        break;
    }
    case InitialKind::Hat: {
        const double h = cfg.hat_height, w = cfg.hat_width;
        f = [h, w](double x) { return std::max(0.0, h * (1.0 - std::abs(x) / (0.5 * w))); };
        break;
    }
    case InitialKind::Table: f = table_profile(cfg.table_path); break;
    }
    if (cfg.floor == 0.0) return f;
    return [f, c = cfg.floor](double x) { return f(x) + c; };
}

Layer initial_layer(const RunConfig& cfg) {
    const auto u0 = initial_profile(cfg);
    const Geometry g = traits(cfg.scheme).geometry;
    if (g != Geometry::Mass) return uniform_layer(0.0, cfg.x_left, cfg.x_right, cfg.nodes, u0);
    if (cfg.scheme == SchemeId::SH31N) {
        // equal mass per cell: h_s from the trapezoidal total over the domain
        const int fine = 20 * cfg.nodes;
        const double dx = (cfg.x_right - cfg.x_left) / fine;
        double mass = 0;
        for (int i = 0; i < fine; ++i) mass += 0.5 * dx * (u0(cfg.x_left + i * dx) + u0(cfg.x_left + (i + 1) * dx));
        return init_mass_mesh(u0, cfg.x_left, mass / (cfg.nodes - 1), cfg.nodes);
    }
    return init_density_mesh(u0, cfg.x_left, (cfg.x_right - cfg.x_left) / (cfg.nodes - 1), cfg.nodes);
}

std::optional<std::function<double(double, double)>> exact_solution(const RunConfig& cfg) {
    const bool heat = cfg.model.q_family == QFamily::Zero &&
                      (cfg.model.k_family == KFamily::Linear ||
                       (cfg.model.k_family == KFamily::Arbitrary && cfg.k_power == 0.0));
    if (!heat || cfg.floor != 0.0) return std::nullopt;
    if (cfg.initial == InitialKind::Gaussian) {
        const KernelSolution k = cfg.gaussian;
        return [k](double t, double x) { return kernel_value(k, t, x); };
    }
    if (cfg.initial == InitialKind::TwoGaussians) {
        const SuperposedKernels sp = cfg.two_gaussians;
        return [sp](double t, double x) { return superposition_value(sp, t, x); };
    }
    return std::nullopt;
}

}  // namespace cli
