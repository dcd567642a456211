#include "heatsym/scheme_id.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "heatsym/errors.hpp"

namespace heatsym {

std::string_view to_string(SchemeId id) noexcept {
    switch (id) {
    case SchemeId::SH11: return "SH11";
    case SchemeId::SH12: return "SH12";
    case SchemeId::SH21: return "SH21";
    case SchemeId::SH22: return "SH22";
    case SchemeId::SH23: return "SH23";
    case SchemeId::SH24: return "SH24";
    case SchemeId::SH31: return "SH31";
    case SchemeId::SH31A: return "SH31A";
    case SchemeId::SH31N: return "SH31N";
    case SchemeId::SH32: return "SH32";
    case SchemeId::SH33: return "SH33";
    case SchemeId::SH34: return "SH34";
    case SchemeId::SH41: return "SH41";
    case SchemeId::SH42: return "SH42";
    case SchemeId::SH44A: return "SH44A";
    case SchemeId::SH44B: return "SH44B";
    case SchemeId::SH45A: return "SH45A";
    case SchemeId::SH45B: return "SH45B";
    case SchemeId::SH51: return "SH51";
    case SchemeId::SH52: return "SH52";
    case SchemeId::SH53: return "SH53";
    case SchemeId::SH54E: return "SH54E";
    case SchemeId::SH54I: return "SH54I";
    case SchemeId::EQ55A: return "EQ55A";
    case SchemeId::TS5G: return "TS5G";
    case SchemeId::TS5U: return "TS5U";
    }
    return "?";
}

SchemeId parse_scheme_id(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (SchemeId id : kAllSchemes)
        if (to_string(id) == upper) return id;
    fail(ErrorCode::ParseError, "unknown scheme id: " + std::string(name));
}

}  // namespace heatsym
