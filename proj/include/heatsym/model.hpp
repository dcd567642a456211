#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace heatsym {

enum class KFamily { Arbitrary, Exponential, Power, PowerMinus43, Linear };

enum class QFamily {
    Arbitrary,
    Zero,
    Constant,          // Q = delta
    ExpSource,         // Q = sign * e^{alpha u}   (alpha = 1 for K = 1)
    PowerSource,       // Q = sign * u^n
    LogSource,         // Q = delta * u ln u
    LinearSource,      // Q = delta * u
    MixedExpConst,     // Q = sign * e^u + delta
    MixedPowerLinear,  // Q = sign * u^{sigma+1} + delta u; alpha u^{-1/3} + delta u for K = u^{-4/3}
    MixedCritical,     // Q = alpha u^{-1/3}, K = u^{-4/3}
};

/// A point of the group classification of u_t = (K(u) u_x)_x + Q(u).
///
/// Only the parameters the case actually uses are read; the rest stay empty.
/// `alpha` is the source exponent for K = e^u, Q = ±e^{alpha u} and the sign
/// in front of u^{-1/3} for the K = u^{-4/3} cases.
struct HeatModel {
    KFamily k_family = KFamily::Arbitrary;
    QFamily q_family = QFamily::Arbitrary;
    std::optional<double> sigma;
    std::optional<double> n;
    std::optional<double> delta;
    std::optional<double> alpha;
    std::optional<double> sign;

    bool operator==(const HeatModel&) const = default;
};

/// Which of sigma/n/delta/alpha/sign a case reads.
struct ParameterUse {
    bool sigma = false;
    bool n = false;
    bool delta = false;
    bool alpha = false;
    bool sign = false;
};

/// Throws UnknownCase if the (K, Q) pair is not in the classification.
ParameterUse parameter_use(KFamily k, QFamily q);

/// Validates the parameters of `model` and returns a copy with unused fields
/// cleared. Throws UnknownCase or InvalidParameter.
HeatModel canonical(const HeatModel& model);

/// Canonical textual key, e.g. "K=u^s,Q=0" or "K=e^u,Q=+e^{au}".
std::string model_key(const HeatModel& model);

/// Parses a key produced by model_key. The "+-" spelling is also accepted in
/// place of an explicit sign; the sign then has to be supplied separately.
/// Numeric parameters are never part of the key.
HeatModel parse_model_key(std::string_view key);

/// Power-law exponent of K (sigma for Power, -4/3 for PowerMinus43).
double k_exponent(const HeatModel& model);

}  // namespace heatsym
