#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corec {

// A natural-number operation left the representable range.
struct RangeError : std::overflow_error {
  explicit RangeError(const std::string& what) : std::overflow_error(what) {}
};

// A bounded search scanned more elements than it was allowed to.
struct FuelExhausted : std::runtime_error {
  FuelExhausted(const std::string& what, std::size_t fuel)
      : std::runtime_error(what + " (fuel " + std::to_string(fuel) + " exhausted)"), fuel_(fuel) {}

  std::size_t fuel() const noexcept { return fuel_; }

 private:
  std::size_t fuel_;
};

// A tail capability was handed to an engine that did not issue it.
struct EngineMismatch : std::logic_error {
  explicit EngineMismatch(const std::string& what) : std::logic_error(what) {}
};

}  // namespace corec
