// xrl/guid.cpp - GUID parsing and normalization
#include "xrl/guid.hpp"

#include <array>
#include <cctype>

#include "xrl/hash.hpp"

namespace xrl
{

namespace
{

constexpr std::array<int, 5> kGroupLens = {8, 4, 4, 4, 12};

std::string lowercased(std::string_view s)
{
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool is_hex(char c)
{
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

}  // namespace

bool is_guid_shaped(std::string_view text)
{
  if (text.size() != 36) return false;
  std::size_t pos = 0;
  for (std::size_t g = 0; g < kGroupLens.size(); ++g) {
    for (int i = 0; i < kGroupLens[g]; ++i) {
      if (!is_hex(text[pos++])) return false;
    }
    if (g + 1 < kGroupLens.size() && text[pos++] != '-') return false;
  }
  return true;
}

std::string guid_format_error(std::string_view text)
{
  if (is_guid_shaped(text)) return {};
  if (text.size() != 36)
    return "wrong length " + std::to_string(text.size()) + " (expected 36 characters)";
  if (text[8] != '-' || text[13] != '-' || text[18] != '-' || text[23] != '-')
    return "wrong grouping (expected 8-4-4-4-12 hyphenated groups)";
  return "non-hexadecimal characters present";
}

std::optional<Guid> Guid::parse(std::string_view text)
{
  if (!is_guid_shaped(text)) return std::nullopt;
  return Guid(lowercased(text));
}

Guid Guid::lenient(std::string_view text)
{
  return Guid(lowercased(text));
}

bool Guid::is_valid() const
{
  return is_guid_shaped(text_);
}

}  // namespace xrl
