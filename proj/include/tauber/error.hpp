#pragma once

#include <stdexcept>
#include <string>

namespace tauber {

// Every failure carries a stable machine-readable code; the CLI turns it into a
// single-line JSON record.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace tauber
