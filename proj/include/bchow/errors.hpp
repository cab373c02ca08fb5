#ifndef BCHOW_ERRORS_HPP
#define BCHOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bchow {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct EmptyInput : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct DegenerateFan : Error { using Error::Error; };
struct NonExactDivision : Error { using Error::Error; };
struct NotSmooth : Error { using Error::Error; };
struct FanMismatch : Error { using Error::Error; };
struct NotARefinement : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct NotSpanning : Error { using Error::Error; };
struct DepthExceeded : Error { using Error::Error; };
struct NotAGenerator : Error { using Error::Error; };
struct NonNilpotentInput : Error { using Error::Error; };
struct LevelOutOfRange : Error { using Error::Error; };
struct NotTopDegree : Error { using Error::Error; };
struct ToleranceNotReached : Error { using Error::Error; };
struct NonPositiveDegree : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace bchow

#endif
