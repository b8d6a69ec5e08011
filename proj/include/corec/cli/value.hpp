#pragma once

// Stream elements of the pipeline language: integers, booleans and pairs.

#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace corec::cli {

// A named function was applied to a value of the wrong shape.
struct TypeError : std::runtime_error {
  explicit TypeError(const std::string& what) : std::runtime_error(what) {}
};

class Value {
 public:
  static Value integer(std::int64_t x) { return Value(Rep(std::in_place_index<0>, x)); }
  static Value boolean(bool b) { return Value(Rep(std::in_place_index<1>, b)); }
  static Value pair(Value a, Value b) {
    return Value(Rep(std::in_place_index<2>, std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b))));
  }

  bool is_int() const noexcept { return rep_.index() == 0; }
  bool is_bool() const noexcept { return rep_.index() == 1; }
  bool is_pair() const noexcept { return rep_.index() == 2; }

  std::int64_t as_int() const;
  bool as_bool() const;
  const Value& first() const;
  const Value& second() const;

  std::string to_string() const;

  friend bool operator==(const Value& a, const Value& b);
  // Integers before booleans before pairs; within a shape the usual order.
  friend bool operator<(const Value& a, const Value& b);
  friend bool operator>(const Value& a, const Value& b) { return b < a; }
  friend bool operator<=(const Value& a, const Value& b) { return !(b < a); }
  friend bool operator>=(const Value& a, const Value& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& out, const Value& v) { return out << v.to_string(); }

 private:
  using Rep = std::variant<std::int64_t, bool, std::shared_ptr<const std::pair<Value, Value>>>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

}  // namespace corec::cli
