#pragma once

#include <stdexcept>
#include <string>

namespace mssh {

// Exit-code classes used by the CLI: config = 2, numerical = 3, invariant = 4.
enum class ErrorKind { config, numerical, invariant };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct SingularPoint : Error {
  explicit SingularPoint(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct NoConventionMatches : Error {
  explicit NoConventionMatches(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct GapClosed : Error {
  explicit GapClosed(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct LightConeOverflow : Error {
  explicit LightConeOverflow(const std::string& w) : Error(ErrorKind::numerical, w) {}
};

struct ConfigError : Error {
  ConfigError(std::string path, const std::string& reason)
      : Error(ErrorKind::config, (path.empty() ? std::string("<root>") : path) + ": " + reason),
        path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error(ErrorKind::invariant, w) {}
};

}  // namespace mssh
