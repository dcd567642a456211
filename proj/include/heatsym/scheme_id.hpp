#pragma once

#include <array>
#include <string_view>

namespace heatsym {

enum class SchemeId {
    SH11, SH12,
    SH21, SH22, SH23, SH24,
    SH31, SH31A, SH31N, SH32, SH33, SH34,
    SH41, SH42, SH44A, SH44B, SH45A, SH45B,
    SH51, SH52, SH53, SH54E, SH54I, EQ55A,
    TS5G, TS5U,
};

inline constexpr std::array<SchemeId, 26> kAllSchemes = {
    SchemeId::SH11,  SchemeId::SH12,  SchemeId::SH21,  SchemeId::SH22,  SchemeId::SH23,
    SchemeId::SH24,  SchemeId::SH31,  SchemeId::SH31A, SchemeId::SH31N, SchemeId::SH32,
    SchemeId::SH33,  SchemeId::SH34,  SchemeId::SH41,  SchemeId::SH42,  SchemeId::SH44A,
    SchemeId::SH44B, SchemeId::SH45A, SchemeId::SH45B, SchemeId::SH51,  SchemeId::SH52,
    SchemeId::SH53,  SchemeId::SH54E, SchemeId::SH54I, SchemeId::EQ55A, SchemeId::TS5G,
    SchemeId::TS5U,
};

std::string_view to_string(SchemeId id) noexcept;

/// Case-insensitive; throws ParseError on unknown names.
SchemeId parse_scheme_id(std::string_view name);

}  // namespace heatsym
