#include "corec/cli/value.hpp"

namespace corec::cli {

std::int64_t Value::as_int() const {
  if (!is_int()) throw TypeError("expected an integer, got " + to_string());
  return std::get<0>(rep_);
}

bool Value::as_bool() const {
  if (!is_bool()) throw TypeError("expected a boolean, got " + to_string());
  return std::get<1>(rep_);
}

const Value& Value::first() const {
  if (!is_pair()) throw TypeError("expected a pair, got " + to_string());
  return std::get<2>(rep_)->first;
}

const Value& Value::second() const {
  if (!is_pair()) throw TypeError("expected a pair, got " + to_string());
  return std::get<2>(rep_)->second;
}

std::string Value::to_string() const {
  switch (rep_.index()) {
    case 0:
      return std::to_string(std::get<0>(rep_));
    case 1:
      return std::get<1>(rep_) ? "#t" : "#f";
    default: {
      const auto& p = *std::get<2>(rep_);
      return "(" + p.first.to_string() + ", " + p.second.to_string() + ")";
    }
  }
}

bool operator==(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return false;
  switch (a.rep_.index()) {
    case 0:
      return std::get<0>(a.rep_) == std::get<0>(b.rep_);
    case 1:
      return std::get<1>(a.rep_) == std::get<1>(b.rep_);
    default:
      return a.first() == b.first() && a.second() == b.second();
  }
}

bool operator<(const Value& a, const Value& b) {
  if (a.rep_.index() != b.rep_.index()) return a.rep_.index() < b.rep_.index();
  switch (a.rep_.index()) {
    case 0:
      return std::get<0>(a.rep_) < std::get<0>(b.rep_);
    case 1:
      return std::get<1>(a.rep_) < std::get<1>(b.rep_);
    default:
      if (a.first() < b.first()) return true;
      if (b.first() < a.first()) return false;
      return a.second() < b.second();
  }
}

}  // namespace corec::cli
