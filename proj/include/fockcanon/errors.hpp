#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fockcanon {

// Base for every typed error in the library. name() is stable and machine
// readable; the CLI surfaces it in error JSON.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

private:
  std::string name_;
};

#define FOCKCANON_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                     \
  public:                                                         \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

FOCKCANON_DEFINE_ERROR(DegenerateElement);
FOCKCANON_DEFINE_ERROR(SingularMatrix);
FOCKCANON_DEFINE_ERROR(BranchFailure);
FOCKCANON_DEFINE_ERROR(NonFiniteIntegrand);
FOCKCANON_DEFINE_ERROR(ZeroS);
FOCKCANON_DEFINE_ERROR(NotInFock);
FOCKCANON_DEFINE_ERROR(DomainViolation);
FOCKCANON_DEFINE_ERROR(NotHilbertSchmidt);
FOCKCANON_DEFINE_ERROR(NotUnitary);
FOCKCANON_DEFINE_ERROR(TruncationTooLarge);
FOCKCANON_DEFINE_ERROR(NoDiskSolution);
FOCKCANON_DEFINE_ERROR(DegenerateKappa);
FOCKCANON_DEFINE_ERROR(ZeroDelta);
FOCKCANON_DEFINE_ERROR(NonPositiveRealPart);
FOCKCANON_DEFINE_ERROR(HypothesisViolation);
FOCKCANON_DEFINE_ERROR(OverflowGuard);
FOCKCANON_DEFINE_ERROR(SingularDet);
FOCKCANON_DEFINE_ERROR(OscillationBudgetExceeded);
FOCKCANON_DEFINE_ERROR(UsageError);

#undef FOCKCANON_DEFINE_ERROR

}  // namespace fockcanon
