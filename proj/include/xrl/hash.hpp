// xrl/hash.hpp - FNV-1a 64-bit, the stable hash behind env digests and derived Guids
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace xrl
{

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;

constexpr std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = kFnvOffset)
{
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string to_hex16(std::uint64_t value);

}  // namespace xrl
