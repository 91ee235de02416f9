#pragma once

// Run configuration: key=value lines, '#' comments, namespaced keys. Every
// key has a default (RunConfig{} is the default configuration); unknown keys
// and out-of-range values are rejected with the offending key named.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gkl/verify.hpp"

namespace gkl {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& msg)
      : std::runtime_error(msg), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  VerifyConfig verify;
  std::string output_dir = ".";
  std::string output_prefix = "gkl_";
  std::size_t threads = 0;  // 0: hardware concurrency

  // Applies one key=value assignment; throws ConfigError.
  void set(const std::string& key, const std::string& value);
  // Cross-field checks after all assignments.
  void validate() const;

  static RunConfig parse(const std::string& text, const std::string& source = "<config>");
  static RunConfig load(const std::string& path);

  // Every key with its documentation, in a fixed order (for --help-config).
  struct KeyDoc {
    std::string key, default_value, doc;
  };
  static const std::vector<KeyDoc>& keys();
};

}  // namespace gkl
