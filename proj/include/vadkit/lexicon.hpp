#pragma once

#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/space.hpp"
#include "vadkit/vad_point.hpp"

namespace vadkit {

enum class NativeScale { UnitInterval, Polar };

inline constexpr std::string_view name(NativeScale s) noexcept {
  return s == NativeScale::UnitInterval ? "unit" : "polar";
}

struct RawLexiconEntry {
  std::string term;
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  friend bool operator==(const RawLexiconEntry&, const RawLexiconEntry&) = default;
};

// Each basic emotion resolves either through a lexicon term or a fixed polar point.
using EmotionSource = std::variant<std::string, VadPoint>;

struct LexiconConfig {
  NativeScale native_scale = NativeScale::UnitInterval;
  std::optional<std::vector<std::string>> subset_terms;
  std::array<EmotionSource, kNumEmotions> basic_emotions = default_sources();

  static std::array<EmotionSource, kNumEmotions> default_sources() {
    std::array<EmotionSource, kNumEmotions> out;
    for (BasicEmotion e : kBasicEmotions) out[index_of(e)] = std::string(name(e));
    out[index_of(BasicEmotion::Neutral)] = VadPoint{0.0, 0.0, 0.0};
    return out;
  }
};

inline constexpr double kScaleTolerance = 1e-12;

// Maps a unit-interval score onto the polar scale.
inline double to_polar(double score) {
  if (!(score >= -kScaleTolerance && score <= 1.0 + kScaleTolerance)) {
    throw Error(ErrorCode::ScoreOutOfRange, "score " + std::to_string(score) + " not in [0,1]");
  }
  return std::clamp(2.0 * score - 1.0, -1.0, 1.0);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) return std::nullopt;
  return value;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

// Tab-separated `term valence arousal dominance`. A first line whose score
// fields are not numeric is taken as a header.
inline std::vector<RawLexiconEntry> parse_lexicon(std::istream& source,
                                                  const LexiconConfig& config) {
  const double lo = config.native_scale == NativeScale::UnitInterval ? 0.0 : -1.0;
  std::vector<RawLexiconEntry> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() != 4) {
      throw Error(ErrorCode::MalformedLine,
                  "expected 4 tab-separated fields, found " + std::to_string(fields.size()),
                  line_no);
    }
    std::array<std::optional<double>, 3> scores = {
        detail::parse_double(fields[1]), detail::parse_double(fields[2]),
        detail::parse_double(fields[3])};
    const bool any_numeric = scores[0] || scores[1] || scores[2];
    if (line_no == 1 && !any_numeric) continue;  // header
    if (!(scores[0] && scores[1] && scores[2])) {
      throw Error(ErrorCode::MalformedLine, "unparseable score", line_no);
    }
    std::string term = to_lower(detail::trim(fields[0]));
    if (term.empty()) throw Error(ErrorCode::MalformedLine, "empty term", line_no);
    for (const auto& s : scores) {
      if (!(*s >= lo - kScaleTolerance && *s <= 1.0 + kScaleTolerance)) {
        throw Error(ErrorCode::ScoreOutOfRange,
                    "score " + detail::format_double(*s) + " for '" + term +
                        "' outside the declared " + std::string(name(config.native_scale)) +
                        " range",
                    line_no);
      }
    }
    if (!seen.insert(term).second) {
      throw Error(ErrorCode::DuplicateTerm, "term '" + term + "' already defined", line_no);
    }
    out.push_back({std::move(term), *scores[0], *scores[1], *scores[2]});
  }
  return out;
}

// One term per line; blank lines and surrounding whitespace ignored.
inline std::vector<std::string> parse_subset(std::istream& source) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(source, line)) {
    auto t = detail::trim(line);
    if (!t.empty()) out.push_back(to_lower(t));
  }
  return out;
}

inline EmotionSpace build_space(const std::vector<RawLexiconEntry>& entries,
                                const LexiconConfig& config) {
  auto rescale = [&](const RawLexiconEntry& e) {
    if (config.native_scale == NativeScale::Polar) {
      return VadPoint{std::clamp(e.valence, -1.0, 1.0), std::clamp(e.arousal, -1.0, 1.0),
                      std::clamp(e.dominance, -1.0, 1.0)};
    }
    return VadPoint{to_polar(e.valence), to_polar(e.arousal), to_polar(e.dominance)};
  };

  std::unordered_map<std::string, std::size_t> by_term;
  for (std::size_t i = 0; i < entries.size(); ++i) by_term.emplace(entries[i].term, i);

  std::vector<SpaceEntry> kept;
  if (config.subset_terms) {
    std::unordered_set<std::string> taken;
    for (const auto& raw : *config.subset_terms) {
      const std::string term = to_lower(raw);
      auto it = by_term.find(term);
      if (it == by_term.end()) {
        throw Error(ErrorCode::SubsetTermMissing, "subset term '" + term + "' not in lexicon");
      }
      if (taken.insert(term).second) kept.push_back({term, rescale(entries[it->second])});
    }
  } else {
    kept.reserve(entries.size());
    for (const auto& e : entries) kept.push_back({e.term, rescale(e)});
  }

  std::array<VadPoint, kNumEmotions> seeds;
  for (BasicEmotion e : kBasicEmotions) {
    const auto& source = config.basic_emotions[index_of(e)];
    if (const auto* p = std::get_if<VadPoint>(&source)) {
      seeds[index_of(e)] = *p;
      continue;
    }
    const std::string term = to_lower(std::get<std::string>(source));
    auto it = by_term.find(term);
    if (it == by_term.end()) {
      throw Error(ErrorCode::BasicEmotionUnresolvable,
                  std::string(name(e)) + " maps to '" + term +
                      "', which is not in the lexicon; set a term alias or a VAD override");
    }
    seeds[index_of(e)] = rescale(entries[it->second]);
  }
  return EmotionSpace(std::move(kept), seeds);
}

inline const VadPoint& basic_emotion_seed(const EmotionSpace& space, BasicEmotion emotion) {
  return space.seed(emotion);
}

// Writes the space back in lexicon-file form (polar scale, with header).
inline void write_space(std::ostream& out, const EmotionSpace& space) {
  out << "term\tvalence\tarousal\tdominance\n";
  for (const auto& e : space.entries()) {
    out << e.term << '\t' << detail::format_double(e.point.valence) << '\t'
        << detail::format_double(e.point.arousal) << '\t'
        << detail::format_double(e.point.dominance) << '\n';
  }
}

}  // namespace vadkit
