#pragma once

#include <stdexcept>
#include <string>

namespace kbg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define KBG_DEFINE_ERROR(Name)                                    \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return #Name; }  \
  };

KBG_DEFINE_ERROR(ParseError)
KBG_DEFINE_ERROR(InvalidArgument)
KBG_DEFINE_ERROR(SizeLimit)
KBG_DEFINE_ERROR(DivisionByNonUnit)
KBG_DEFINE_ERROR(NotInS)
KBG_DEFINE_ERROR(InvalidQ)
KBG_DEFINE_ERROR(NonIntegralCount)
KBG_DEFINE_ERROR(NonIntegral)
KBG_DEFINE_ERROR(NotARepresentation)
KBG_DEFINE_ERROR(NotGenerating)
KBG_DEFINE_ERROR(NotASubgroup)
KBG_DEFINE_ERROR(InconsistentTable)
KBG_DEFINE_ERROR(EvenCharacter)
KBG_DEFINE_ERROR(NotAUnit)
KBG_DEFINE_ERROR(NonPolynomial)
KBG_DEFINE_ERROR(InvalidFan)

#undef KBG_DEFINE_ERROR

}  // namespace kbg
