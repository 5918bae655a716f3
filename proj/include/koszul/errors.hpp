#pragma once

#include <stdexcept>
#include <string>

namespace koszul {

/// Raised when the inputs are well-formed but a mathematical precondition of
/// the requested check does not hold (e.g. a rank bound, or FG != H^n).
class precondition_failed : public std::runtime_error {
public:
  explicit precondition_failed(const std::string &what)
      : std::runtime_error(what) {}
};

namespace detail {
[[noreturn]] inline void invalid(const std::string &msg) {
  throw std::invalid_argument(msg);
}
} // namespace detail

} // namespace koszul
