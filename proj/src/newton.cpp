#include "newton.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

#include "heatsym/errors.hpp"

namespace heatsym::detail {

namespace {

double worst(const std::vector<Residual>& r) {
    double m = 0.0;
    for (const Residual& v : r) m = std::max(m, v.normalized());
    return m;
}

double sup(const std::vector<Residual>& r) {
    double m = 0.0;
    for (const Residual& v : r) m = std::max(m, std::abs(v.value));
    return m;
}

bool finite(const std::vector<Residual>& r) {
    return std::all_of(r.begin(), r.end(), [](const Residual& v) { return std::isfinite(v.value); });
}

// Evaluates f, turning domain failures of a trial point into "infinitely bad".
std::vector<Residual> try_eval(const System& f, const std::vector<double>& x, bool& ok) {
    try {
        auto r = f(x);
        ok = finite(r);
        return r;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::DomainError) throw;
        ok = false;
        return {};
    }
}

}  // namespace

SolveResult solve_system(const System& f, std::vector<double> x, int bandwidth,
                         const FixedPoint& fallback, double tol, int max_iter) {
    const int n = static_cast<int>(x.size());
    const int period = 2 * bandwidth + 1;
    bool ok = true;
    std::vector<Residual> r = try_eval(f, x, ok);
    if (!ok) fail(ErrorCode::SolverDiverged, "initial guess is outside the scheme's domain");

    int it = 0;
    for (; it < max_iter && worst(r) > 1e-3 * tol; ++it) {
        Eigen::SparseMatrix<double> J(n, n);
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(n) * period);
        for (int color = 0; color < period && color < n; ++color) {
            std::vector<double> xp = x;
            std::vector<double> step(n, 0.0);
            for (int j = color; j < n; j += period) {
                step[j] = 1e-7 * std::max(1.0, std::abs(x[j]));
                xp[j] += step[j];
            }
            bool okp = true;
            const auto rp = try_eval(f, xp, okp);
            if (!okp) break;
            for (int j = color; j < n; j += period)
                for (int i = std::max(0, j - bandwidth); i <= std::min(n - 1, j + bandwidth); ++i)
                    trip.emplace_back(i, j, (rp[i].value - r[i].value) / step[j]);
        }
        J.setFromTriplets(trip.begin(), trip.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success) break;
        Eigen::VectorXd rhs(n);
        for (int i = 0; i < n; ++i) rhs[i] = -r[i].value;
        const Eigen::VectorXd dx = lu.solve(rhs);
        if (lu.info() != Eigen::Success || !dx.allFinite()) break;

        const double base = sup(r);
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lambda *= 0.5) {
            std::vector<double> xt = x;
            for (int i = 0; i < n; ++i) xt[i] += lambda * dx[i];
            bool okt = true;
            auto rt = try_eval(f, xt, okt);
            if (okt && sup(rt) < (1.0 - 1e-4 * lambda) * base) {
                x = std::move(xt);
                r = std::move(rt);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (worst(r) <= tol) return {x, it};

    if (fallback) {
        for (int k = 0; k < 2000; ++k) {
            x = fallback(x);
            bool okf = true;
            r = try_eval(f, x, okf);
            if (!okf) break;
            if (worst(r) <= tol) return {x, it + k + 1};
        }
    }
    fail(ErrorCode::SolverDiverged,
         "implicit solve did not reach tolerance (residual " + std::to_string(worst(r)) + ")");
}

double solve_scalar(const std::function<Residual(double)>& g, double x, double tol) {
    auto value = [&](double v, bool& ok) {
        try {
            const Residual r = g(v);
            ok = std::isfinite(r.value);
            return r;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DomainError) throw;
            ok = false;
            return Residual{};
        }
    };
    bool ok = true;
    Residual r = value(x, ok);
    if (!ok) fail(ErrorCode::SolverDiverged, "scalar solve started outside the domain");
    for (int it = 0; it < 100; ++it) {
        if (r.normalized() <= tol) return x;
        const double dh = 1e-7 * std::max(1.0, std::abs(x));
        bool okp = true;
        const Residual rp = value(x + dh, okp);
        double slope = okp ? (rp.value - r.value) / dh : 0.0;
        if (!(slope != 0.0) || !std::isfinite(slope)) break;
        const double dx = -r.value / slope;
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 40; ++k, lambda *= 0.5) {
            bool okt = true;
            const Residual rt = value(x + lambda * dx, okt);
            if (okt && std::abs(rt.value) < std::abs(r.value)) {
                x += lambda * dx;
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    if (r.normalized() <= std::max(tol, 1e-13)) return x;
    fail(ErrorCode::SolverDiverged, "scalar solve did not converge");
}

}  // namespace heatsym::detail
