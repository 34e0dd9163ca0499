// SPDX-License-Identifier: MIT
//
// Build metadata and the tiny hashing helpers used for config fingerprints.

#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

#define FRI_LAB_VERSION "0.1.0"

namespace fri {

/// FNV-1a over bytes; used to fingerprint canonical config JSON.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Fixed-width lowercase hex (16 digits).
inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return std::string(buf, 16);
}

}  // namespace fri
