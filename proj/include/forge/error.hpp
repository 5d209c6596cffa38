#pragma once

#include <stdexcept>
#include <string>

namespace forge
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

#define FORGE_DEFINE_ERROR(Name)                                              \
  class Name : public Error                                                   \
  {                                                                           \
  public:                                                                     \
    using Error::Error;                                                       \
  };

FORGE_DEFINE_ERROR(InvalidArgument)
FORGE_DEFINE_ERROR(CapExceeded)
FORGE_DEFINE_ERROR(NotNormal)
FORGE_DEFINE_ERROR(NotAHom)
FORGE_DEFINE_ERROR(TrivialGroup)
FORGE_DEFINE_ERROR(NotTransitive)
FORGE_DEFINE_ERROR(MinPolyReducible)
FORGE_DEFINE_ERROR(NotSemisimple)
FORGE_DEFINE_ERROR(BadPrime)
FORGE_DEFINE_ERROR(HypothesisViolated)
FORGE_DEFINE_ERROR(NotDirectProduct)
FORGE_DEFINE_ERROR(NotIntravariant)
FORGE_DEFINE_ERROR(InternalInconsistency)
FORGE_DEFINE_ERROR(NotFound)
FORGE_DEFINE_ERROR(OracleRequired)
FORGE_DEFINE_ERROR(NotCEpimorphism)
FORGE_DEFINE_ERROR(NotSurjective)
FORGE_DEFINE_ERROR(DegenerateKernel)
FORGE_DEFINE_ERROR(ParseError)
FORGE_DEFINE_ERROR(ValidationError)

#undef FORGE_DEFINE_ERROR

// Raised when a step of a constructive proof fails its own postcondition.
inline void ensure(bool condition, std::string const &what)
{
  if (!condition)
    throw InternalInconsistency(what);
}

} // namespace forge
