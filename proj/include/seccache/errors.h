#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace seccache {

/// An enumeration (demand space or input space) would exceed its cap.
class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what + ": requires " + std::to_string(required) +
                           " enumerations, cap is " + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

class NotDecodable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace seccache
