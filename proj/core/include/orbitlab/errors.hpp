#pragma once

#include <stdexcept>
#include <string>

namespace orbitlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define ORBITLAB_DEFINE_ERROR(Name)                                           \
  class Name : public Error {                                                 \
  public:                                                                     \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}      \
  }

ORBITLAB_DEFINE_ERROR(DimensionMismatch);
ORBITLAB_DEFINE_ERROR(SizeMismatch);
ORBITLAB_DEFINE_ERROR(ShapeError);
ORBITLAB_DEFINE_ERROR(NotSquare);
ORBITLAB_DEFINE_ERROR(NotSymmetric);
ORBITLAB_DEFINE_ERROR(InfiniteGroup);
ORBITLAB_DEFINE_ERROR(FiniteGroup);
ORBITLAB_DEFINE_ERROR(TooLarge);
ORBITLAB_DEFINE_ERROR(UnsupportedFamily);
ORBITLAB_DEFINE_ERROR(UnsupportedSignature);
ORBITLAB_DEFINE_ERROR(EmptyGlueSet);
ORBITLAB_DEFINE_ERROR(NotEquivariant);
ORBITLAB_DEFINE_ERROR(NotInvolution);
ORBITLAB_DEFINE_ERROR(NotOrder3);
ORBITLAB_DEFINE_ERROR(PropertyCheckFailed);
ORBITLAB_DEFINE_ERROR(BadMix);
ORBITLAB_DEFINE_ERROR(NoValidPairs);
ORBITLAB_DEFINE_ERROR(BadArgument);
ORBITLAB_DEFINE_ERROR(ConfigError);
ORBITLAB_DEFINE_ERROR(IoError);

#undef ORBITLAB_DEFINE_ERROR

}  // namespace orbitlab
