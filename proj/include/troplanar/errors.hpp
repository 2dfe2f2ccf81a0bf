#pragma once

#include <stdexcept>
#include <string>

namespace troplanar {

// Raised when a request exceeds a configured size or time budget.
class ResourceGuard : public std::runtime_error {
 public:
  explicit ResourceGuard(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace troplanar
