// xrl/hash.cpp - hex rendering helper
#include "xrl/hash.hpp"

namespace xrl
{

std::string to_hex16(std::uint64_t value)
{
  static const char * digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xf];
    value >>= 4;
  }
  return out;
}

}  // namespace xrl
