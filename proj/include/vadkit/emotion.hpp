#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vadkit {

// The six discrete classes. The ordinal doubles as the cluster index the
// class seeds, so the order is part of the on-disk model format.
enum class BasicEmotion : std::uint8_t { Happy, Sad, Worried, Surprised, Angry, Neutral };

inline constexpr std::size_t kNumEmotions = 6;

inline constexpr std::array<BasicEmotion, kNumEmotions> kBasicEmotions = {
    BasicEmotion::Happy,     BasicEmotion::Sad,   BasicEmotion::Worried,
    BasicEmotion::Surprised, BasicEmotion::Angry, BasicEmotion::Neutral};

constexpr std::size_t index_of(BasicEmotion e) noexcept { return static_cast<std::size_t>(e); }

constexpr BasicEmotion emotion_at(std::size_t index) noexcept { return kBasicEmotions[index]; }

constexpr std::string_view name(BasicEmotion e) noexcept {
  switch (e) {
    case BasicEmotion::Happy: return "happy";
    case BasicEmotion::Sad: return "sad";
    case BasicEmotion::Worried: return "worried";
    case BasicEmotion::Surprised: return "surprised";
    case BasicEmotion::Angry: return "angry";
    case BasicEmotion::Neutral: return "neutral";
  }
  return "";
}

inline std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Case-insensitive.
inline std::optional<BasicEmotion> parse_emotion(std::string_view text) {
  const std::string lowered = to_lower(text);
  for (BasicEmotion e : kBasicEmotions) {
    if (lowered == name(e)) return e;
  }
  return std::nullopt;
}

}  // namespace vadkit
