#ifndef NEWTONARC_ERROR_HPP
#define NEWTONARC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace newtonarc {

// Domain error carrying a stable machine-readable code (kebab-case) and an
// optional location string (the parser uses character offsets).
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message, std::string location = {})
      : std::runtime_error(message),
        code_(std::move(code)),
        location_(std::move(location)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& location() const noexcept { return location_; }

private:
  std::string code_;
  std::string location_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message,
                              std::string location = {}) {
  throw Error(std::move(code), message, std::move(location));
}

}  // namespace newtonarc

#endif
