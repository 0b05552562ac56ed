// xrl/scalar.cpp - Scalar classification and canonical text
#include "xrl/scalar.hpp"

#include <charconv>
#include <cstdlib>

namespace xrl
{

ScalarType ScalarValue::type() const
{
  switch (v_.index()) {
    case 0: return ScalarType::Null;
    case 1: return ScalarType::Bool;
    case 2: return ScalarType::Int;
    case 3: return ScalarType::Real;
    default: return ScalarType::Text;
  }
}

std::string ScalarValue::to_text() const
{
  switch (type()) {
    case ScalarType::Null: return "null";
    case ScalarType::Bool: return as_bool() ? "true" : "false";
    case ScalarType::Int: return std::to_string(as_int());
    case ScalarType::Real: return format_real(as_real());
    case ScalarType::Text: return as_text();
  }
  return {};
}

namespace
{

bool all_digits(std::string_view s)
{
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

bool is_int_shaped(std::string_view s)
{
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  return all_digits(s);
}

// Digits with a mandatory dot or exponent part.
bool is_real_shaped(std::string_view s)
{
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.remove_prefix(1);
  std::size_t mantissa_end = s.find_first_of("eE");
  std::string_view mantissa = s.substr(0, mantissa_end);
  bool has_exp = mantissa_end != std::string_view::npos;
  if (has_exp) {
    std::string_view exp = s.substr(mantissa_end + 1);
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) exp.remove_prefix(1);
    if (!all_digits(exp)) return false;
  }
  std::size_t dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    return has_exp && all_digits(mantissa);
  }
  std::string_view ip = mantissa.substr(0, dot);
  std::string_view fp = mantissa.substr(dot + 1);
  if (ip.empty() && fp.empty()) return false;
  if (!ip.empty() && !all_digits(ip)) return false;
  if (!fp.empty() && !all_digits(fp)) return false;
  return true;
}

bool iequals(std::string_view a, std::string_view b)
{
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x - 'A' + 'a');
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y - 'A' + 'a');
    if (x != y) return false;
  }
  return true;
}

}  // namespace

ScalarValue classify_plain_scalar(std::string_view raw)
{
  if (raw.empty() || raw == "~" || iequals(raw, "null")) return ScalarValue::null();
  if (iequals(raw, "true")) return ScalarValue::boolean(true);
  if (iequals(raw, "false")) return ScalarValue::boolean(false);
  if (is_int_shaped(raw)) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (ec == std::errc() && ptr == raw.data() + raw.size()) return ScalarValue::integer(v);
    return ScalarValue::text(std::string(raw));  // out of range
  }
  if (is_real_shaped(raw)) {
    std::string buf(raw);
    char * end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end == buf.c_str() + buf.size()) return ScalarValue::real(v);
  }
  return ScalarValue::text(std::string(raw));
}

std::string format_real(double value)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string s(buf, ptr);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find('E') == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos) {
    s += ".0";
  }
  return s;
}

const char * scalar_type_name(ScalarType t)
{
  switch (t) {
    case ScalarType::Null: return "null";
    case ScalarType::Bool: return "bool";
    case ScalarType::Int: return "int";
    case ScalarType::Real: return "real";
    case ScalarType::Text: return "text";
  }
  return "?";
}

}  // namespace xrl
