#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>

namespace vadkit {

// 64-bit FNV-1a, rendered as 16 lowercase hex digits. Used for provenance
// fingerprints only.
class Fingerprint {
 public:
  Fingerprint& add(std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }

  // Field separator so that ("ab","c") and ("a","bc") differ.
  Fingerprint& field(std::string_view bytes) noexcept {
    add(bytes);
    const char sep = '\x1f';
    return add(std::string_view(&sep, 1));
  }

  std::uint64_t value() const noexcept { return state_; }

  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(state_));
    return buf;
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace vadkit
