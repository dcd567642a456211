#include "heatsym/model.hpp"

#include <cmath>
#include <string>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

constexpr double kMinus43 = -4.0 / 3.0;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

std::string sign_text(const std::optional<double>& s) {
    if (!s) return "+-";
    return *s > 0 ? "+" : "-";
}

void require(bool used, const std::optional<double>& value, const char* name) {
    if (used && !value)
        fail(ErrorCode::InvalidParameter, std::string("parameter ") + name + " is required");
    if (used && !std::isfinite(*value))
        fail(ErrorCode::InvalidParameter, std::string("parameter ") + name + " must be finite");
}

void require_unit(const std::optional<double>& value, const char* name) {
    if (!near(std::abs(*value), 1.0))
        fail(ErrorCode::InvalidParameter, std::string(name) + " must be +1 or -1");
}

}  // namespace

ParameterUse parameter_use(KFamily k, QFamily q) {
    using K = KFamily;
    using Q = QFamily;
    ParameterUse p;
    switch (k) {
    case K::Arbitrary:
        if (q == Q::Arbitrary || q == Q::Zero) return p;
        break;
    case K::Exponential:
        switch (q) {
        case Q::Zero: return p;
        case Q::Constant: p.delta = true; return p;
        case Q::ExpSource: p.alpha = p.sign = true; return p;
        case Q::MixedExpConst: p.sign = p.delta = true; return p;
        default: break;
        }
        break;
    case K::Power:
        p.sigma = true;
        switch (q) {
        case Q::Zero: return p;
        case Q::LinearSource: p.delta = true; return p;
        case Q::PowerSource: p.n = p.sign = true; return p;
        case Q::MixedPowerLinear: p.sign = p.delta = true; return p;
        default: break;
        }
        break;
    case K::PowerMinus43:
        switch (q) {
        case Q::Zero: return p;
        case Q::LinearSource: p.delta = true; return p;
        case Q::PowerSource: p.n = p.sign = true; return p;
        case Q::MixedCritical: p.alpha = true; return p;
        case Q::MixedPowerLinear: p.alpha = p.delta = true; return p;
        default: break;
        }
        break;
    case K::Linear:
        switch (q) {
        case Q::ExpSource: p.sign = true; return p;
        case Q::PowerSource: p.n = p.sign = true; return p;
        case Q::LogSource: p.delta = true; return p;
        case Q::Zero: return p;
        case Q::LinearSource: p.delta = true; return p;
        case Q::Constant: p.delta = true; return p;
        default: break;
        }
        break;
    }
    fail(ErrorCode::UnknownCase, "the (K, Q) combination is not in the classification");
}

HeatModel canonical(const HeatModel& m) {
    const ParameterUse use = parameter_use(m.k_family, m.q_family);
    require(use.sigma, m.sigma, "sigma");
    require(use.n, m.n, "n");
    require(use.delta, m.delta, "delta");
    require(use.alpha, m.alpha, "alpha");
    require(use.sign, m.sign, "sign");

    HeatModel out;
    out.k_family = m.k_family;
    out.q_family = m.q_family;
    if (use.sigma) {
        if (near(*m.sigma, 0.0)) fail(ErrorCode::InvalidParameter, "sigma must be nonzero");
        if (near(*m.sigma, kMinus43))
            fail(ErrorCode::UnknownCase, "sigma = -4/3 belongs to the K=u^-4/3 family");
        out.sigma = m.sigma;
    }
    if (use.delta) {
        require_unit(m.delta, "delta");
        out.delta = *m.delta > 0 ? 1.0 : -1.0;
    }
    if (use.sign) {
        require_unit(m.sign, "sign");
        out.sign = *m.sign > 0 ? 1.0 : -1.0;
    }
    if (use.alpha) {
        if (m.k_family == KFamily::PowerMinus43) {
            require_unit(m.alpha, "alpha");
            out.alpha = *m.alpha > 0 ? 1.0 : -1.0;
        } else {
            if (near(*m.alpha, 0.0)) fail(ErrorCode::InvalidParameter, "alpha must be nonzero");
            out.alpha = m.alpha;
        }
    }
    if (use.n) {
        const double n = *m.n;
        if (near(n, 1.0)) fail(ErrorCode::InvalidParameter, "n = 1 makes the source linear");
        if (m.k_family == KFamily::PowerMinus43 && near(n, -1.0 / 3.0))
            fail(ErrorCode::UnknownCase, "n = -1/3 is the separate critical source case");
        if (m.k_family == KFamily::Linear && near(n, 0.0))
            fail(ErrorCode::UnknownCase, "n = 0 is the constant-source case");
        out.n = n;
    }
    return out;
}

std::string model_key(const HeatModel& m) {
    using K = KFamily;
    using Q = QFamily;
    parameter_use(m.k_family, m.q_family);
    std::string k;
    switch (m.k_family) {
    case K::Arbitrary: k = "any"; break;
    case K::Exponential: k = "e^u"; break;
    case K::Power: k = "u^s"; break;
    case K::PowerMinus43: k = "u^-4/3"; break;
    case K::Linear: k = "1"; break;
    }
    std::string q;
    switch (m.q_family) {
    case Q::Arbitrary: q = "any"; break;
    case Q::Zero: q = "0"; break;
    case Q::Constant: q = "d"; break;
    case Q::ExpSource:
        q = sign_text(m.sign) + (m.k_family == K::Linear ? "e^u" : "e^{au}");
        break;
    case Q::PowerSource: q = sign_text(m.sign) + "u^n"; break;
    case Q::LogSource: q = "d*u*ln(u)"; break;
    case Q::LinearSource: q = "d*u"; break;
    case Q::MixedExpConst: q = sign_text(m.sign) + "e^u+d"; break;
    case Q::MixedPowerLinear:
        q = m.k_family == K::PowerMinus43 ? sign_text(m.alpha) + "u^-1/3+d*u"
                                          : sign_text(m.sign) + "u^{s+1}+d*u";
        break;
    case Q::MixedCritical: q = sign_text(m.alpha) + "u^-1/3"; break;
    }
    return "K=" + k + ",Q=" + q;
}

HeatModel parse_model_key(std::string_view key) {
    std::string text;
    for (char c : key)
        if (c != ' ') text.push_back(c);
    const auto comma = text.find(',');
    if (text.rfind("K=", 0) != 0 || comma == std::string::npos ||
        text.compare(comma + 1, 2, "Q=") != 0)
        fail(ErrorCode::ParseError, "model key must look like K=...,Q=...: " + std::string(key));
    const std::string k = text.substr(2, comma - 2);
    std::string q = text.substr(comma + 3);

    HeatModel m;
    if (k == "any") m.k_family = KFamily::Arbitrary;
    else if (k == "e^u") m.k_family = KFamily::Exponential;
    else if (k == "u^s") m.k_family = KFamily::Power;
    else if (k == "u^-4/3") m.k_family = KFamily::PowerMinus43;
    else if (k == "1") m.k_family = KFamily::Linear;
    else fail(ErrorCode::ParseError, "unknown K in model key: " + k);

    std::optional<double> lead_sign;
    if (q.rfind("+-", 0) == 0) q = q.substr(2);
    else if (!q.empty() && (q[0] == '+' || q[0] == '-')) {
        lead_sign = q[0] == '+' ? 1.0 : -1.0;
        q = q.substr(1);
    }
    const bool pm43 = m.k_family == KFamily::PowerMinus43;
    if (q == "any") m.q_family = QFamily::Arbitrary;
    else if (q == "0") m.q_family = QFamily::Zero;
    else if (q == "d") m.q_family = QFamily::Constant;
    else if (q == "e^{au}" || q == "e^u") m.q_family = QFamily::ExpSource;
    else if (q == "u^n") m.q_family = QFamily::PowerSource;
    else if (q == "d*u*ln(u)") m.q_family = QFamily::LogSource;
    else if (q == "d*u") m.q_family = QFamily::LinearSource;
    else if (q == "e^u+d") m.q_family = QFamily::MixedExpConst;
    else if (q == "u^{s+1}+d*u" || (pm43 && q == "u^-1/3+d*u")) m.q_family = QFamily::MixedPowerLinear;
    else if (pm43 && q == "u^-1/3") m.q_family = QFamily::MixedCritical;
    else fail(ErrorCode::ParseError, "unknown Q in model key: " + q);

    const ParameterUse use = parameter_use(m.k_family, m.q_family);
    if (pm43) {
        if (use.alpha) m.alpha = lead_sign;
        else if (use.sign) m.sign = lead_sign;
    } else if (use.sign) {
        m.sign = lead_sign;
    }
    if (m.k_family == KFamily::Exponential && m.q_family == QFamily::ExpSource && q == "e^u")
        m.alpha = 1.0;
    return m;
}

double k_exponent(const HeatModel& m) {
    if (m.k_family == KFamily::PowerMinus43) return kMinus43;
    if (m.k_family == KFamily::Power && m.sigma) return *m.sigma;
    if (m.k_family == KFamily::Linear) return 0.0;
    fail(ErrorCode::InvalidParameter, "K is not a power law");
}

}  // namespace heatsym
