#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace droidlab {

// 64-bit FNV-1a. Content identity for screen blobs, exports, and manifests.
// Not cryptographic; stable across platforms, which is what determinism
// checks need.
constexpr std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v);

inline std::string content_hash(std::string_view data) {
  return to_hex(fnv1a64(data));
}

}  // namespace droidlab
