#pragma once

#include <stdexcept>
#include <string>

namespace trisect {

// Domain errors. The CLI maps these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};
struct MoveNotApplicable : Error {
  using Error::Error;
};
struct NoStandardSummand : Error {
  using Error::Error;
};
struct NonSemisimple : Error {
  using Error::Error;
};
struct MissingIrreps : Error {
  using Error::Error;
};
struct ResourceExceeded : Error {
  using Error::Error;
};
struct StabilizationObstruction : Error {
  using Error::Error;
};
struct InternalConsistency : Error {
  using Error::Error;
};

}  // namespace trisect
