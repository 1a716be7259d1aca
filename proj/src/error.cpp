#include "pwh/error.hpp"

#include <utility>

namespace pwh {

Error::Error(ErrorKind kind, std::string code, const std::string& message,
             std::string offending)
    : std::runtime_error(message),
      kind_(kind),
      code_(std::move(code)),
      offending_(std::move(offending)) {}

void domain_error(std::string code, const std::string& message, std::string offending) {
  throw Error(ErrorKind::Domain, std::move(code), message, std::move(offending));
}

void input_error(std::string code, const std::string& message, std::string offending) {
  throw Error(ErrorKind::Input, std::move(code), message, std::move(offending));
}

}  // namespace pwh
