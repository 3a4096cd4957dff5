#pragma once

#include <stdexcept>
#include <string>

namespace cdno {

// Base for all library errors. Subclasses exist so callers can catch the
// specific failure they can recover from.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define CDNO_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

CDNO_DEFINE_ERROR(AngleOutOfRange);
CDNO_DEFINE_ERROR(NotMonotone);
CDNO_DEFINE_ERROR(OutOfRange);
CDNO_DEFINE_ERROR(OutOfRegion);
CDNO_DEFINE_ERROR(OutOfSector);
CDNO_DEFINE_ERROR(CoercivityLost);
CDNO_DEFINE_ERROR(LiftFailed);
CDNO_DEFINE_ERROR(DegenerateGeometry);
CDNO_DEFINE_ERROR(SolverDiverged);
CDNO_DEFINE_ERROR(ParallelCase);
CDNO_DEFINE_ERROR(CompatibilityViolated);
CDNO_DEFINE_ERROR(InsufficientSamples);
CDNO_DEFINE_ERROR(SpecialAngle);
CDNO_DEFINE_ERROR(ResonantExponent);
CDNO_DEFINE_ERROR(IllConditioned);
CDNO_DEFINE_ERROR(NotPositive);
CDNO_DEFINE_ERROR(DegenerateMu);
CDNO_DEFINE_ERROR(NotGlobal);
CDNO_DEFINE_ERROR(AdmissibilityLost);
CDNO_DEFINE_ERROR(ParseError);
CDNO_DEFINE_ERROR(ValidationError);

#undef CDNO_DEFINE_ERROR

}  // namespace cdno
