#pragma once

// Named functions usable as pipeline arguments.  Integer arithmetic is
// checked and raises corec::RangeError on overflow.

#include <functional>
#include <string_view>
#include <vector>

#include "corec/cli/value.hpp"

namespace corec::cli {

using Fn1 = std::function<Value(const Value&)>;
using Fn2 = std::function<Value(const Value&, const Value&)>;
using Predicate = std::function<bool(const Value&)>;

// Throw std::out_of_range for unknown names.
Fn1 fn1(std::string_view name);
Fn2 fn2(std::string_view name);
Predicate predicate(std::string_view name);

const std::vector<std::string_view>& fn1_names();
const std::vector<std::string_view>& fn2_names();
const std::vector<std::string_view>& predicate_names();

}  // namespace corec::cli
