#include "corec/cli/functions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "corec/errors.hpp"

namespace corec::cli {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw RangeError("integer overflow in addition");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw RangeError("integer overflow in subtraction");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("integer overflow in multiplication");
  return r;
}

Value num(std::int64_t x) { return Value::integer(x); }

const std::map<std::string_view, Fn1>& fn1_table() {
  static const std::map<std::string_view, Fn1> table = {
      {"succ", [](const Value& v) { return num(checked_add(v.as_int(), 1)); }},
      {"pred", [](const Value& v) { return num(checked_sub(v.as_int(), 1)); }},
      {"double", [](const Value& v) { return num(checked_mul(v.as_int(), 2)); }},
      {"square", [](const Value& v) { return num(checked_mul(v.as_int(), v.as_int())); }},
      {"negate", [](const Value& v) { return num(checked_sub(0, v.as_int())); }},
      {"not", [](const Value& v) { return Value::boolean(!v.as_bool()); }},
      {"id", [](const Value& v) { return v; }},
      {"fst", [](const Value& v) { return v.first(); }},
      {"snd", [](const Value& v) { return v.second(); }},
  };
  return table;
}

const std::map<std::string_view, Fn2>& fn2_table() {
  static const std::map<std::string_view, Fn2> table = {
      {"add", [](const Value& a, const Value& b) { return num(checked_add(a.as_int(), b.as_int())); }},
      {"sub", [](const Value& a, const Value& b) { return num(checked_sub(a.as_int(), b.as_int())); }},
      {"mul", [](const Value& a, const Value& b) { return num(checked_mul(a.as_int(), b.as_int())); }},
      {"max", [](const Value& a, const Value& b) { return a < b ? b : a; }},
      {"min", [](const Value& a, const Value& b) { return b < a ? b : a; }},
      {"pair", [](const Value& a, const Value& b) { return Value::pair(a, b); }},
      {"eq", [](const Value& a, const Value& b) { return Value::boolean(a == b); }},
  };
  return table;
}

const std::map<std::string_view, Predicate>& predicate_table() {
  static const std::map<std::string_view, Predicate> table = {
      {"even", [](const Value& v) { return v.as_int() % 2 == 0; }},
      {"odd", [](const Value& v) { return v.as_int() % 2 != 0; }},
      {"positive", [](const Value& v) { return v.as_int() > 0; }},
      {"negative", [](const Value& v) { return v.as_int() < 0; }},
      {"zero", [](const Value& v) { return v.as_int() == 0; }},
      {"nonzero", [](const Value& v) { return v.as_int() != 0; }},
      {"truthy", [](const Value& v) { return v.as_bool(); }},
      {"falsy", [](const Value& v) { return !v.as_bool(); }},
      {"all", [](const Value&) { return true; }},
      {"none", [](const Value&) { return false; }},
  };
  return table;
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& table, std::string_view name, const char* what) {
  auto it = table.find(name);
  if (it == table.end()) throw std::out_of_range(std::string("unknown ") + what + " '" + std::string(name) + "'");
  return it->second;
}

template <class Map>
std::vector<std::string_view> keys(const Map& table) {
  std::vector<std::string_view> out;
  for (const auto& [k, _] : table) out.push_back(k);
  return out;
}

}  // namespace

Fn1 fn1(std::string_view name) { return lookup(fn1_table(), name, "function"); }
Fn2 fn2(std::string_view name) { return lookup(fn2_table(), name, "binary function"); }
Predicate predicate(std::string_view name) { return lookup(predicate_table(), name, "predicate"); }

const std::vector<std::string_view>& fn1_names() {
  static const auto names = keys(fn1_table());
  return names;
}

const std::vector<std::string_view>& fn2_names() {
  static const auto names = keys(fn2_table());
  return names;
}

const std::vector<std::string_view>& predicate_names() {
  static const auto names = keys(predicate_table());
  return names;
}

}  // namespace corec::cli
