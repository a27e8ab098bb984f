#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hybridmc {

// Configuration rejected by validation. Collects every violated constraint
// so a bad file is reported in one pass.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}
  explicit ConfigError(const std::string& msg)
      : ConfigError(std::vector<std::string>{msg}) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v);
  std::vector<std::string> violations_;
};

class NumericalInstability : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SlotOutOfRange : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LengthMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hybridmc
