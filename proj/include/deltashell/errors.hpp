#pragma once

#include <stdexcept>
#include <string>

namespace deltashell {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : Error {
  using Error::Error;
};
struct DuplicateRadius : Error {
  using Error::Error;
};
struct NonPositiveRadius : Error {
  using Error::Error;
};
struct ZeroStrength : Error {
  using Error::Error;
};
struct InsufficientShells : Error {
  using Error::Error;
};
struct PrerequisiteNotMet : Error {
  using Error::Error;
};
struct MixedSigns : Error {
  using Error::Error;
};
struct MeshTooCoarse : Error {
  using Error::Error;
};
struct UnsupportedDimension : Error {
  using Error::Error;
};

}  // namespace deltashell
