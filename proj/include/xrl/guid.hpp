// xrl/guid.hpp - Canonical GUID text (8-4-4-4-12 lowercase hex)
#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace xrl
{

/// Textual GUID identifier. Strict parsing demands the hyphenated
/// 8-4-4-4-12 hex form (case-insensitive on input, stored lowercase);
/// version/variant nibbles are not interpreted. The lenient constructor
/// keeps arbitrary lowercased text so documents with malformed ids can
/// still be modeled and flagged by validation (XRL001).
class Guid
{
public:
  Guid() = default;

  static std::optional<Guid> parse(std::string_view text);
  static Guid lenient(std::string_view text);

  const std::string & text() const { return text_; }
  bool is_valid() const;

  bool operator==(const Guid & o) const { return text_ == o.text_; }
  bool operator!=(const Guid & o) const { return text_ != o.text_; }
  bool operator<(const Guid & o) const { return text_ < o.text_; }

private:
  explicit Guid(std::string t) : text_(std::move(t)) {}
  std::string text_;
};

/// Why a string is not a well-formed GUID; empty when it is.
std::string guid_format_error(std::string_view text);

/// True for the exact 8-4-4-4-12 lowercase/uppercase hex shape.
bool is_guid_shaped(std::string_view text);

}  // namespace xrl
