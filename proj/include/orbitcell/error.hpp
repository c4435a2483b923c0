#pragma once

#include <stdexcept>
#include <string>

namespace orbitcell {

/// Base of every library error.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define ORBITCELL_ERROR(Name)                                                  \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

ORBITCELL_ERROR(InvalidInput);
ORBITCELL_ERROR(NoIntegerSolution);
ORBITCELL_ERROR(NonUnique);
ORBITCELL_ERROR(InvalidComplex);
ORBITCELL_ERROR(Cyclic);
ORBITCELL_ERROR(NotGraded);
ORBITCELL_ERROR(NotComparable);
ORBITCELL_ERROR(NotSemilattice);
ORBITCELL_ERROR(NotConvex);
ORBITCELL_ERROR(NotExtremal);
ORBITCELL_ERROR(Incompatible);
ORBITCELL_ERROR(NotCycle);
ORBITCELL_ERROR(PreconditionFailed);
ORBITCELL_ERROR(NotGeometric);
ORBITCELL_ERROR(NotIndependent);
ORBITCELL_ERROR(UnsupportedParameters);
ORBITCELL_ERROR(OracleTooLarge);

#undef ORBITCELL_ERROR

} // namespace orbitcell
