// Minimal expected-style result type used by validators that report
// structured errors instead of throwing.
#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace dualips {

template <typename T, typename E>
class Result {
 public:
  static Result ok(T value) {
    Result r;
    r.value_ = std::move(value);
    return r;
  }
  static Result fail(E error) {
    Result r;
    r.error_ = std::move(error);
    return r;
  }

  bool has_value() const { return value_.has_value(); }
  explicit operator bool() const { return has_value(); }

  const T& value() const& {
    if (!value_) throw std::logic_error("Result: access to value of failed result");
    return *value_;
  }
  T&& value() && {
    if (!value_) throw std::logic_error("Result: access to value of failed result");
    return std::move(*value_);
  }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const E& error() const {
    if (!error_) throw std::logic_error("Result: access to error of successful result");
    return *error_;
  }

 private:
  Result() = default;
  std::optional<T> value_;
  std::optional<E> error_;
};

}  // namespace dualips
