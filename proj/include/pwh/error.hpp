#pragma once

#include <stdexcept>
#include <string>

namespace pwh {

// Domain errors are well-formed requests the mathematics rejects (exit 1 in
// the CLI); input errors are malformed data (exit 2).
enum class ErrorKind { Domain, Input };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message,
        std::string offending = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& offending() const noexcept { return offending_; }

 private:
  ErrorKind kind_;
  std::string code_;
  std::string offending_;
};

[[noreturn]] void domain_error(std::string code, const std::string& message,
                               std::string offending = {});
[[noreturn]] void input_error(std::string code, const std::string& message,
                              std::string offending = {});

}  // namespace pwh
