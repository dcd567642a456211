#include "heatsym/errors.hpp"

namespace heatsym {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnknownCase: return "UnknownCase";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::FlowBlowup: return "FlowBlowup";
    case ErrorCode::LayerSkew: return "LayerSkew";
    case ErrorCode::InadmissibleImage: return "InadmissibleImage";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::SolverDiverged: return "SolverDiverged";
    case ErrorCode::StabilityBreach: return "StabilityBreach";
    case ErrorCode::NonpositiveDensity: return "NonpositiveDensity";
    case ErrorCode::MissingMassGrid: return "MissingMassGrid";
    case ErrorCode::LayerMismatch: return "LayerMismatch";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace heatsym
