#pragma once

#include <stdexcept>
#include <string>

namespace ganfor {

// Error with a stable machine-parsable category ("io.decode",
// "checkpoint.version", "config.shape", "numeric.tolerance", ...).
// The category taxonomy is part of the CLI interface.
class Error : public std::runtime_error {
public:
  Error(std::string category, const std::string& message)
      : std::runtime_error(category + ": " + message),
        category_(std::move(category)) {}

  const std::string& category() const noexcept { return category_; }

private:
  std::string category_;
};

[[noreturn]] inline void fail(std::string category, const std::string& message) {
  throw Error(std::move(category), message);
}

inline void require(bool cond, const std::string& category, const std::string& message) {
  if (!cond) fail(category, message);
}

}  // namespace ganfor
