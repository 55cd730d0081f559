#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bkappa {

enum class Errc {
    InvalidArgument,
    ParseError,
    ZeroLeadingCoefficient,
    PrecisionExhausted,
    ConstructionMismatch,
    InvalidForm,
    NotFundamental,
    NonIntegral,
    InadmissibleDiscriminant,
    NonRationalPoint,
    PoleAtS,
    PoleAtOne,
    UnsupportedSignature,
    NonPositiveT,
    MissingLFactor,
    NonIntegralPrincipalPart,
    DegreeIdentityViolation,
};

constexpr std::string_view to_string(Errc e) noexcept
{
    switch (e) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::ConstructionMismatch: return "ConstructionMismatch";
    case Errc::InvalidForm: return "InvalidForm";
    case Errc::NotFundamental: return "NotFundamental";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::InadmissibleDiscriminant: return "InadmissibleDiscriminant";
    case Errc::NonRationalPoint: return "NonRationalPoint";
    case Errc::PoleAtS: return "PoleAtS";
    case Errc::PoleAtOne: return "PoleAtOne";
    case Errc::UnsupportedSignature: return "UnsupportedSignature";
    case Errc::NonPositiveT: return "NonPositiveT";
    case Errc::MissingLFactor: return "MissingLFactor";
    case Errc::NonIntegralPrincipalPart: return "NonIntegralPrincipalPart";
    case Errc::DegreeIdentityViolation: return "DegreeIdentityViolation";
    }
    return "Unknown";
}

/// Every failure raised by the library carries one of the `Errc` codes.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &detail)
        : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail)
    {
    }

    Errc code() const noexcept { return code_; }
    const std::string &detail() const noexcept { return detail_; }

private:
    Errc code_;
    std::string detail_;
};

} // namespace bkappa
