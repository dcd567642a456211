#include "heatsym/invariants.hpp"

#include <cmath>

#include "heatsym/model_catalog.hpp"

namespace heatsym {

namespace {

using K = KFamily;
using Q = QFamily;
using S = const Stencil&;
using Inv = DifferenceInvariant;

const double kSqrt3 = std::sqrt(3.0);

HeatModel find_model(K k, Q q, double alpha = 0.0) {
    for (const HeatModel& m : list_models())
        if (m.k_family == k && m.q_family == q && (alpha == 0.0 || m.alpha == alpha)) return m;
    return {};
}

// Ratios and differences of the six u values on an orthogonal stencil.
std::vector<Inv> u_ratios() {
    return {{"u_hat/u", [](S s) { return s.u_hat() / s.u(); }},
            {"u+/u", [](S s) { return s.u_plus() / s.u(); }},
            {"u-/u", [](S s) { return s.u_minus() / s.u(); }},
            {"u_hat+/u_hat", [](S s) { return s.u_hat_plus() / s.u_hat(); }},
            {"u_hat-/u_hat", [](S s) { return s.u_hat_minus() / s.u_hat(); }}};
}

std::vector<Inv> u_differences(bool with_time = true) {
    std::vector<Inv> v;
    if (with_time) v.push_back({"u_hat-u", [](S s) { return s.u_hat() - s.u(); }});
    v.push_back({"u+-u", [](S s) { return s.u_plus() - s.u(); }});
    v.push_back({"u-u-", [](S s) { return s.u() - s.u_minus(); }});
    v.push_back({"u_hat+-u_hat", [](S s) { return s.u_hat_plus() - s.u_hat(); }});
    v.push_back({"u_hat-u_hat-", [](S s) { return s.u_hat() - s.u_hat_minus(); }});
    return v;
}

std::vector<Inv> join(std::vector<Inv> a, const std::vector<Inv>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<Inv> drop_first(std::vector<Inv> v) {
    v.erase(v.begin());
    return v;
}

InvariantList make(std::string suffix, const HeatModel& m, Geometry g, std::vector<Inv> inv,
                   std::optional<SchemeId> binding = std::nullopt) {
    const ModelEntry e = lookup(m);
    std::string name = model_key(e.model);
    if (!suffix.empty()) name += " " + suffix;
    InvariantList l{std::move(name), e.model, g, e.generators, std::move(inv)};
    if (binding) l.generators = e.binding(*binding)->generators;
    return l;
}

// |e^{delta sigma tau} - 1|, the invariant time scale of the log-time cases.
double log_time_scale(double d, double sigma, double tau) {
    return std::abs(std::expm1(d * sigma * tau));
}

// Invariants of the x-dependent critical-source algebras; `hyp` selects
// sinh/tanh (alpha = +1) or sin/tan (alpha = -1). With `d` set the time
// scale is |e^{-4 d tau/3} - 1| instead of tau.
std::vector<Inv> critical_invariants(bool hyp, std::optional<double> d) {
    auto sn = [hyp](double h) { return hyp ? std::sinh(h / kSqrt3) : std::sin(h / kSqrt3); };
    auto tn = [hyp](double h) { return hyp ? std::tanh(h / kSqrt3) : std::tan(h / kSqrt3); };
    auto scale = [d](S s) { return d ? log_time_scale(*d, -4.0 / 3.0, s.tau()) : s.tau(); };
    std::vector<Inv> v;
    if (d) {
        const double dd = *d;
        v.push_back({"delta ln(u_hat/u) - tau",
                     [dd](S s) { return dd * std::log(s.u_hat() / s.u()) - s.tau(); }});
    } else {
        v.push_back({"u_hat/u", [](S s) { return s.u_hat() / s.u(); }});
        v.push_back({"u_hat+/u+", [](S s) { return s.u_hat_plus() / s.u_plus(); }});
        v.push_back({"u_hat-/u-", [](S s) { return s.u_hat_minus() / s.u_minus(); }});
    }
    v.push_back({"sqrt(T) u^-2/3 (1/tn(h+) + 1/tn(h-))", [=](S s) {
                     return std::sqrt(scale(s)) * std::pow(s.u(), -2.0 / 3.0) *
                            (1.0 / tn(s.h_plus()) + 1.0 / tn(s.h_minus()));
                 }});
    v.push_back({"u^1/3 u+^1/3 sn(h+)/sqrt(T)", [=](S s) {
                     return std::cbrt(s.u() * s.u_plus()) * sn(s.h_plus()) / std::sqrt(scale(s));
                 }});
    v.push_back({"u^1/3 u-^1/3 sn(h-)/sqrt(T)", [=](S s) {
                     return std::cbrt(s.u() * s.u_minus()) * sn(s.h_minus()) / std::sqrt(scale(s));
                 }});
    if (d) {
        auto scale_hat = [d](S s) { return log_time_scale(-*d, -4.0 / 3.0, s.tau()); };
        v.push_back({"u_hat^1/3 u_hat+^1/3 sn(h+)/sqrt(T_hat)", [=](S s) {
                         return std::cbrt(s.u_hat() * s.u_hat_plus()) * sn(s.h_plus()) /
                                std::sqrt(scale_hat(s));
                     }});
        v.push_back({"u_hat^1/3 u_hat-^1/3 sn(h-)/sqrt(T_hat)", [=](S s) {
                         return std::cbrt(s.u_hat() * s.u_hat_minus()) * sn(s.h_minus()) /
                                std::sqrt(scale_hat(s));
                     }});
    }
    return v;
}

// Invariants of the heat algebra on the moving stencil. The mass-coordinate
// list reuses them with the x steps of its stencil.
std::vector<Inv> heat_moving_invariants() {
    auto lp = [](S s) { return std::log(s.u_plus() / s.u()); };
    auto lm = [](S s) { return std::log(s.u_minus() / s.u()); };
    auto lhp = [](S s) { return std::log(s.u_hat_plus() / s.u_hat()); };
    auto lhm = [](S s) { return std::log(s.u_hat_minus() / s.u_hat()); };
    return {
        {"I1 h+/h-", [](S s) { return s.h_plus() / s.h_minus(); }},
        {"I2 h_hat+/h_hat-", [](S s) { return s.h_plus_hat() / s.h_minus_hat(); }},
        {"I3 h_hat+ h+/tau", [](S s) { return s.h_plus_hat() * s.h_plus() / s.tau(); }},
        {"I4", [](S s) {
             return std::sqrt(s.tau()) / s.h_plus() * s.u_hat() / s.u() *
                    std::exp(0.25 * s.dx() * s.dx() / s.tau());
         }},
        {"I5", [=](S s) {
             const double hp = s.h_plus(), hm = s.h_minus();
             return 0.25 * hp * hp / s.tau() - hp * hp / (hp + hm) * (lp(s) / hp + lm(s) / hm);
         }},
        {"I6", [=](S s) {
             const double hp = s.h_plus_hat(), hm = s.h_minus_hat();
             return 0.25 * hp * hp / s.tau() + hp * hp / (hp + hm) * (lhp(s) / hp + lhm(s) / hm);
         }},
        {"I7", [=](S s) {
             const double hp = s.h_plus(), hm = s.h_minus();
             return s.dx() * hp / s.tau() + 2.0 * hp / (hp + hm) * (hm / hp * lp(s) - hp / hm * lm(s));
         }},
        {"I8", [=](S s) {
             const double hp = s.h_plus_hat(), hm = s.h_minus_hat();
             return s.dx() * hp / s.tau() +
                    2.0 * hp / (hp + hm) * (hm / hp * lhp(s) - hp / hm * lhm(s));
         }},
    };
}

}  // namespace

std::vector<InvariantList> invariant_lists() {
    using GO = Geometry;
    std::vector<InvariantList> out;

    // K, Q arbitrary
    out.push_back(make("", find_model(K::Arbitrary, Q::Arbitrary), GO::OrthogonalUniform,
                       join({{"tau", [](S s) { return s.tau(); }},
                             {"h", [](S s) { return s.h_plus(); }},
                             {"u", [](S s) { return s.u(); }},
                             {"u+", [](S s) { return s.u_plus(); }},
                             {"u-", [](S s) { return s.u_minus(); }},
                             {"u_hat", [](S s) { return s.u_hat(); }}},
                            {{"u_hat-", [](S s) { return s.u_hat_minus(); }},
                             {"u_hat+", [](S s) { return s.u_hat_plus(); }}})));
    out.push_back(make("", find_model(K::Arbitrary, Q::Zero), GO::OrthogonalUniform,
                       {{"h^2/tau", [](S s) { return s.h_plus() * s.h_plus() / s.tau(); }},
                        {"u", [](S s) { return s.u(); }},
                        {"u+", [](S s) { return s.u_plus(); }},
                        {"u-", [](S s) { return s.u_minus(); }},
                        {"u_hat", [](S s) { return s.u_hat(); }},
                        {"u_hat-", [](S s) { return s.u_hat_minus(); }},
                        {"u_hat+", [](S s) { return s.u_hat_plus(); }}}));

    // K = e^u
    out.push_back(make("", find_model(K::Exponential, Q::Zero), GO::OrthogonalUniform,
                       join({{"e^u tau/h^2",
                              [](S s) { return std::exp(s.u()) * s.tau() / (s.h_plus() * s.h_plus()); }}},
                            u_differences())));
    {
        const HeatModel m = find_model(K::Exponential, Q::Constant);
        const double d = *m.delta;
        out.push_back(make("", m, GO::OrthogonalUniform,
            join({{"e^u (e^{d tau}-1)/h^2",
                   [d](S s) { return std::exp(s.u()) * std::expm1(d * s.tau()) / (s.h_plus() * s.h_plus()); }},
                  {"u_hat-u-d tau", [d](S s) { return s.u_hat() - s.u() - d * s.tau(); }}},
                 u_differences(false))));
    }
    {
        const HeatModel m = find_model(K::Exponential, Q::ExpSource);
        const double a = *m.alpha;
        out.push_back(make("", m, GO::OrthogonalUniform,
            join({{"tau^{(a-1)/(2a)}/h",
                   [a](S s) { return std::pow(s.tau(), (a - 1.0) / (2.0 * a)) / s.h_plus(); }},
                  {"e^{au} tau", [a](S s) { return std::exp(a * s.u()) * s.tau(); }}},
                 u_differences())));
    }
    {
        const HeatModel m = find_model(K::Exponential, Q::MixedExpConst);
        const double d = *m.delta;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"e^u (e^{d tau}-1)",
                                  [d](S s) { return std::exp(s.u()) * std::expm1(d * s.tau()); }},
                                 {"h", [](S s) { return s.h_plus(); }},
                                 {"u_hat-u-d tau", [d](S s) { return s.u_hat() - s.u() - d * s.tau(); }}},
                                u_differences(false))));
    }

    // K = u^sigma
    {
        const HeatModel m = find_model(K::Power, Q::Zero);
        const double sg = *m.sigma;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"u^s tau/h^2",
                                  [sg](S s) { return std::pow(s.u(), sg) * s.tau() / (s.h_plus() * s.h_plus()); }}},
                                u_ratios())));
        auto moving_steps = [sg](bool mass) {
            std::vector<Inv> v{{"u^s tau/h+^2", [sg](S s) {
                                    return std::pow(s.u(), sg) * s.tau() / (s.h_plus() * s.h_plus());
                                }}};
            v = join(v, u_ratios());
            v.push_back({"h-/h+", [](S s) { return s.h_minus() / s.h_plus(); }});
            v.push_back({"h_hat-/h+", [](S s) { return s.h_minus_hat() / s.h_plus(); }});
            v.push_back({"h_hat+/h+", [](S s) { return s.h_plus_hat() / s.h_plus(); }});
            v.push_back({"dx/h+", [](S s) { return s.dx() / s.h_plus(); }});
            if (mass)
                v.push_back({"h_s/(u h+)", [](S s) { return s.hs_plus() / (s.u() * s.h_plus()); }});
            return v;
        };
        out.push_back(make("moving", m, GO::Moving, moving_steps(false)));
        out.push_back(make("mass", m, GO::Mass, moving_steps(true), SchemeId::SH31N));
    }
    {
        const HeatModel m = find_model(K::Power, Q::LinearSource);
        const double sg = *m.sigma, d = *m.delta;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"u^s (e^{ds tau}-1)/h^2",
                                  [=](S s) {
                                      return std::pow(s.u(), sg) * std::expm1(d * sg * s.tau()) /
                                             (s.h_plus() * s.h_plus());
                                  }},
                                 {"d ln(u_hat/u) - tau",
                                  [d](S s) { return d * std::log(s.u_hat() / s.u()) - s.tau(); }}},
                                drop_first(u_ratios()))));
    }
    {
        const HeatModel m = find_model(K::Power, Q::PowerSource);
        const double sg = *m.sigma, n = *m.n;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"tau^{(n-s-1)/(2(n-1))}/h",
                                  [=](S s) {
                                      return std::pow(s.tau(), (n - sg - 1.0) / (2.0 * (n - 1.0))) / s.h_plus();
                                  }},
                                 {"tau u^{n-1}", [n](S s) { return s.tau() * std::pow(s.u(), n - 1.0); }}},
                                u_ratios())));
    }
    {
        const HeatModel m = find_model(K::Power, Q::MixedPowerLinear);
        const double sg = *m.sigma, d = *m.delta;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"u^s (e^{ds tau}-1)",
                                  [=](S s) { return std::pow(s.u(), sg) * std::expm1(d * sg * s.tau()); }},
                                 {"h", [](S s) { return s.h_plus(); }},
                                 {"d ln(u_hat/u) - tau",
                                  [d](S s) { return d * std::log(s.u_hat() / s.u()) - s.tau(); }}},
                                drop_first(u_ratios()))));
    }

    // K = u^{-4/3}
    out.push_back(make("", find_model(K::PowerMinus43, Q::Zero), GO::OrthogonalNonuniform,
        {{"u_hat/u", [](S s) { return s.u_hat() / s.u(); }},
         {"u_hat+/u+", [](S s) { return s.u_hat_plus() / s.u_plus(); }},
         {"u_hat-/u-", [](S s) { return s.u_hat_minus() / s.u_minus(); }},
         {"u+^1/3 u^1/3 h+/sqrt(tau)",
          [](S s) { return std::cbrt(s.u_plus() * s.u()) * s.h_plus() / std::sqrt(s.tau()); }},
         {"u-^1/3 u^1/3 h-/sqrt(tau)",
          [](S s) { return std::cbrt(s.u_minus() * s.u()) * s.h_minus() / std::sqrt(s.tau()); }},
         {"u^2/3 h+h-/(h+ + h-)/sqrt(tau)", [](S s) {
              const double hp = s.h_plus(), hm = s.h_minus();
              return std::pow(s.u(), 2.0 / 3.0) * hp * hm / (hp + hm) / std::sqrt(s.tau());
          }}}));
    {
        const HeatModel m = find_model(K::PowerMinus43, Q::LinearSource);
        const double d = *m.delta;
        auto T = [d](S s) { return std::sqrt(log_time_scale(d, -4.0 / 3.0, s.tau())); };
        // the upper layer sits one step later, which flips the sign in the exponent
        auto T_hat = [d](S s) { return std::sqrt(log_time_scale(-d, -4.0 / 3.0, s.tau())); };
        out.push_back(make("", m, GO::OrthogonalNonuniform,
            {{"d ln(u_hat/u) - tau", [d](S s) { return d * std::log(s.u_hat() / s.u()) - s.tau(); }},
             {"u^2/3 h+h-/(h+ + h-)/sqrt(T)", [=](S s) {
                  const double hp = s.h_plus(), hm = s.h_minus();
                  return std::pow(s.u(), 2.0 / 3.0) * hp * hm / (hp + hm) / T(s);
              }},
             {"u+^1/3 u^1/3 h+/sqrt(T)",
              [=](S s) { return std::cbrt(s.u_plus() * s.u()) * s.h_plus() / T(s); }},
             {"u-^1/3 u^1/3 h-/sqrt(T)",
              [=](S s) { return std::cbrt(s.u_minus() * s.u()) * s.h_minus() / T(s); }},
             {"u_hat+^1/3 u_hat^1/3 h+/sqrt(T_hat)",
              [=](S s) { return std::cbrt(s.u_hat_plus() * s.u_hat()) * s.h_plus() / T_hat(s); }},
             {"u_hat-^1/3 u_hat^1/3 h-/sqrt(T_hat)",
              [=](S s) { return std::cbrt(s.u_hat_minus() * s.u_hat()) * s.h_minus() / T_hat(s); }}}));
    }
    out.push_back(make("", find_model(K::PowerMinus43, Q::MixedCritical, 1.0),
                       GO::OrthogonalNonuniform, critical_invariants(true, std::nullopt)));
    out.push_back(make("", find_model(K::PowerMinus43, Q::MixedCritical, -1.0),
                       GO::OrthogonalNonuniform, critical_invariants(false, std::nullopt)));
    {
        const HeatModel a = find_model(K::PowerMinus43, Q::MixedPowerLinear, 1.0);
        const HeatModel b = find_model(K::PowerMinus43, Q::MixedPowerLinear, -1.0);
        out.push_back(make("", a, GO::OrthogonalNonuniform, critical_invariants(true, *a.delta)));
        out.push_back(make("", b, GO::OrthogonalNonuniform, critical_invariants(false, *b.delta)));
    }

    // K = 1
    out.push_back(make("", find_model(K::Linear, Q::ExpSource), GO::OrthogonalUniform,
                       join({{"h^2/tau", [](S s) { return s.h_plus() * s.h_plus() / s.tau(); }},
                             {"tau e^u", [](S s) { return s.tau() * std::exp(s.u()); }}},
                            u_differences())));
    {
        const HeatModel m = find_model(K::Linear, Q::PowerSource);
        const double n = *m.n;
        out.push_back(make("", m, GO::OrthogonalUniform,
                           join({{"h^2/tau", [](S s) { return s.h_plus() * s.h_plus() / s.tau(); }},
                                 {"tau u^{n-1}", [n](S s) { return s.tau() * std::pow(s.u(), n - 1.0); }}},
                                u_ratios())));
    }
    {
        const HeatModel m = find_model(K::Linear, Q::LogSource);
        const double d = *m.delta;
        auto lx = [](double a, double b, double h) { return (std::log(a) - std::log(b)) / h; };
        out.push_back(make("", m, GO::Moving,
            {{"I1 tau", [](S s) { return s.tau(); }},
             {"I2 h+", [](S s) { return s.h_plus(); }},
             {"I3 h-", [](S s) { return s.h_minus(); }},
             {"I4 h_hat+", [](S s) { return s.h_plus_hat(); }},
             {"I5 h_hat-", [](S s) { return s.h_minus_hat(); }},
             {"I6", [=](S s) {
                  return lx(s.u_plus(), s.u(), s.h_plus()) - lx(s.u(), s.u_minus(), s.h_minus());
              }},
             {"I7", [=](S s) {
                  return lx(s.u_hat_plus(), s.u_hat(), s.h_plus_hat()) -
                         lx(s.u_hat(), s.u_hat_minus(), s.h_minus_hat());
              }},
             {"I8", [=](S s) {
                  const double hp = s.h_plus(), hm = s.h_minus();
                  return d * s.dx() + 2.0 * std::expm1(d * s.tau()) *
                                          (hm / (hp + hm) * lx(s.u_plus(), s.u(), hp) +
                                           hp / (hp + hm) * lx(s.u(), s.u_minus(), hm));
              }},
             {"I9", [=](S s) {
                  const double hp = s.h_plus_hat(), hm = s.h_minus_hat();
                  return d * s.dx() - 2.0 * std::expm1(-d * s.tau()) *
                                          (hm / (hp + hm) * lx(s.u_hat_plus(), s.u_hat(), hp) +
                                           hp / (hp + hm) * lx(s.u_hat(), s.u_hat_minus(), hm));
              }},
             {"I10", [=](S s) {
                  return d * s.dx() * s.dx() -
                         4.0 * std::expm1(-d * s.tau()) *
                             (std::log(s.u_hat()) - std::exp(d * s.tau()) * std::log(s.u()));
              }}}));
    }
    const HeatModel heat = find_model(K::Linear, Q::Zero);
    out.push_back(make("moving", heat, GO::Moving, heat_moving_invariants()));
    {
        std::vector<Inv> v = heat_moving_invariants();
        // Density ratios only survive the projective generator together with
        // the matching ratio of cell lengths.
        v.push_back({"I9 rho_hat- h_hat-/(rho- h-)", [](S s) {
                         return s.rho_hat_minus() * s.h_minus_hat() / (s.rho_minus() * s.h_minus());
                     }});
        v.push_back({"I10 rho_hat h_hat+/(rho h+)",
                     [](S s) { return s.rho_hat() * s.h_plus_hat() / (s.rho() * s.h_plus()); }});
        v.push_back({"I11 rho_hat+ h_hat+/(rho+ h+)", [](S s) {
                         return s[Stencil::HatPlus].rho * s.h_plus_hat() /
                                (s[Stencil::Plus].rho * s.h_plus());
                     }});
        v.push_back({"I12 hs+/(rho h+)", [](S s) { return s.hs_plus() / (s.rho() * s.h_plus()); }});
        v.push_back({"I13 hs-/(rho- h-)",
                     [](S s) { return s.hs_minus() / (s.rho_minus() * s.h_minus()); }});
        out.push_back(make("mass", heat, GO::Mass, std::move(v), SchemeId::TS5G));
    }
    return out;
}

}  // namespace heatsym
