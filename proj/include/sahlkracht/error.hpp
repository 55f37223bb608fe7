#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sahlkracht {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::vector<std::string> expected,
              const std::string& found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::vector<std::string> expected_;
};

#define SAHLKRACHT_ERROR(Name)         \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

SAHLKRACHT_ERROR(MissingBinding);
SAHLKRACHT_ERROR(UnboundVariable);
SAHLKRACHT_ERROR(IllFormed);
SAHLKRACHT_ERROR(NotPositive);
SAHLKRACHT_ERROR(NotRegular);
SAHLKRACHT_ERROR(NotBoxFormula);
SAHLKRACHT_ERROR(NotQuasiSafe);
SAHLKRACHT_ERROR(NotSafe);
SAHLKRACHT_ERROR(NotGSAShape);
SAHLKRACHT_ERROR(NotSahlqvist);
SAHLKRACHT_ERROR(NotKracht);
SAHLKRACHT_ERROR(NotNormalizable);
SAHLKRACHT_ERROR(MissingHead);
SAHLKRACHT_ERROR(VerificationFailed);

#undef SAHLKRACHT_ERROR

}  // namespace sahlkracht
