// xrl/scalar.hpp - Typed scalar values (the only value kind XRL parameters allow)
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace xrl
{

enum class ScalarType { Null, Bool, Int, Real, Text };

/// One parameter value: null, boolean, integer, real, or text.
/// Nested structures are deliberately unrepresentable.
class ScalarValue
{
public:
  ScalarValue() : v_(std::monostate{}) {}
  static ScalarValue null() { return ScalarValue(); }
  static ScalarValue boolean(bool b) { return ScalarValue(Storage(b)); }
  static ScalarValue integer(std::int64_t i) { return ScalarValue(Storage(i)); }
  static ScalarValue real(double r) { return ScalarValue(Storage(r)); }
  static ScalarValue text(std::string t) { return ScalarValue(Storage(std::move(t))); }

  ScalarType type() const;
  bool is_null() const { return type() == ScalarType::Null; }

  bool as_bool() const { return std::get<bool>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  double as_real() const { return std::get<double>(v_); }
  const std::string & as_text() const { return std::get<std::string>(v_); }

  /// Canonical textual form without quoting ("null", "true", "42", "1.5", raw text).
  std::string to_text() const;

  bool operator==(const ScalarValue & other) const { return v_ == other.v_; }
  bool operator!=(const ScalarValue & other) const { return !(*this == other); }

private:
  using Storage = std::variant<std::monostate, bool, std::int64_t, double, std::string>;
  explicit ScalarValue(Storage v) : v_(std::move(v)) {}
  Storage v_;
};

/// Classify a plain (unquoted) YAML scalar per the core-schema subset:
/// null/~/empty, true/false, decimal integers, and reals with a dot or
/// exponent. Everything else, including out-of-range integers, is text.
ScalarValue classify_plain_scalar(std::string_view raw);

/// Shortest round-tripping representation of a real; always re-classifies
/// as a real (a ".0" suffix is added when the digits alone would read as
/// an integer).
std::string format_real(double value);

const char * scalar_type_name(ScalarType t);

}  // namespace xrl
