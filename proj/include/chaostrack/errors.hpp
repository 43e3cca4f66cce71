#ifndef CHAOSTRACK_ERRORS_HPP
#define CHAOSTRACK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chaostrack {

// Base class for everything the library can throw.
struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A parameter violated a declared invariant. `field` names the offender.
struct ValidationError : SimulationError {
    std::string field;
    ValidationError(std::string f, const std::string& msg)
        : SimulationError("invalid " + f + ": " + msg), field(std::move(f)) {}
};

// Config-file syntax error with the offending line number.
struct ParseError : SimulationError {
    int line;
    ParseError(int line_no, const std::string& msg)
        : SimulationError("line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

struct NormDriftError : SimulationError { using SimulationError::SimulationError; };
struct NonFiniteError : SimulationError { using SimulationError::SimulationError; };
struct TruncationOverflowError : SimulationError { using SimulationError::SimulationError; };
struct TooShortError : SimulationError { using SimulationError::SimulationError; };
struct EmptySpectrumError : SimulationError { using SimulationError::SimulationError; };
struct DegenerateCombinationError : SimulationError { using SimulationError::SimulationError; };
struct DegeneratePhaseError : SimulationError { using SimulationError::SimulationError; };
struct NoFixedPointsError : SimulationError { using SimulationError::SimulationError; };
struct NoSaddleError : SimulationError { using SimulationError::SimulationError; };
struct NoBracketError : SimulationError { using SimulationError::SimulationError; };
struct SeparatrixAmbiguousError : SimulationError { using SimulationError::SimulationError; };
struct LocalizationFailureError : SimulationError { using SimulationError::SimulationError; };

}  // namespace chaostrack

#endif
