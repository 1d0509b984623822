#pragma once

#include <stdexcept>
#include <string>

namespace genlink {

// Bad input data: missing files, schema violations, duplicate keys.
// The CLI maps this to exit code 2.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace genlink
