#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vadkit/clustering.hpp"
#include "vadkit/error.hpp"
#include "vadkit/hash.hpp"
#include "vadkit/lexicon.hpp"
#include "vadkit/transcode.hpp"

namespace vadkit {

// Settings shared by every CLI command. Read from a `key = value` document:
//
//   scale = unit | polar
//   subset = <path, relative to the config file>
//   emotion.<name> = <lexicon term> | <v>, <a>, <d>
//   kmeans.max_iterations = 300
//   kmeans.tolerance = 1e-9
//   kmeans.pin_neutral = false
//   open_vocab.radius = 0.25
//   open_vocab.exclude = <term>, <term>, ...
//
// `#` starts a comment. Unknown keys are rejected.
struct ToolConfig {
  LexiconConfig lexicon;
  std::optional<std::filesystem::path> subset_path;
  KMeansParams kmeans;
  double radius = kDefaultRadius;
  std::vector<std::string> exclude;

  // Fingerprint over every setting that affects results. The subset is
  // represented by its term list, not its path.
  std::string hash() const {
    Fingerprint fp;
    fp.field(name(lexicon.native_scale));
    if (lexicon.subset_terms) {
      fp.field("subset");
      for (const auto& t : *lexicon.subset_terms) fp.field(t);
    }
    for (BasicEmotion e : kBasicEmotions) {
      const auto& src = lexicon.basic_emotions[index_of(e)];
      fp.field(name(e));
      if (const auto* t = std::get_if<std::string>(&src)) {
        fp.field(*t);
      } else {
        const auto& p = std::get<VadPoint>(src);
        fp.field(detail::format_double(p.valence))
            .field(detail::format_double(p.arousal))
            .field(detail::format_double(p.dominance));
      }
    }
    fp.field(std::to_string(kmeans.max_iterations))
        .field(detail::format_double(kmeans.tolerance))
        .field(kmeans.pin_neutral ? "pinned" : "free")
        .field(detail::format_double(radius));
    for (const auto& t : exclude) fp.field(t);
    return fp.hex();
  }
};

inline NativeScale parse_scale(std::string_view text) {
  const auto t = to_lower(detail::trim(text));
  if (t == "unit" || t == "unitinterval") return NativeScale::UnitInterval;
  if (t == "polar") return NativeScale::Polar;
  throw Error(ErrorCode::MalformedConfig, "scale must be 'unit' or 'polar', got '" + t + "'");
}

inline std::vector<std::string> parse_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto item : detail::split(text, ',')) {
    auto t = detail::trim(item);
    if (!t.empty()) out.push_back(to_lower(t));
  }
  return out;
}

inline bool parse_bool(std::string_view text, std::size_t line) {
  const auto t = to_lower(detail::trim(text));
  if (t == "true" || t == "yes" || t == "1") return true;
  if (t == "false" || t == "no" || t == "0") return false;
  throw Error(ErrorCode::MalformedConfig, "expected a boolean, got '" + t + "'", line);
}

inline EmotionSource parse_emotion_source(std::string_view text, std::size_t line) {
  const auto parts = detail::split(text, ',');
  if (parts.size() == 1) {
    const auto term = to_lower(detail::trim(text));
    if (term.empty()) throw Error(ErrorCode::MalformedConfig, "empty emotion term", line);
    return term;
  }
  if (parts.size() != 3) {
    throw Error(ErrorCode::MalformedConfig, "override must be three comma-separated numbers", line);
  }
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto x = detail::parse_double(parts[i]);
    if (!x) throw Error(ErrorCode::MalformedConfig, "unparseable override component", line);
    v[i] = *x;
  }
  const VadPoint p{v[0], v[1], v[2]};
  if (!in_polar_range(p)) throw Error(ErrorCode::MalformedConfig, "override outside [-1,1]^3", line);
  return p;
}

inline ToolConfig parse_config(std::istream& source,
                               const std::filesystem::path& base_dir = {}) {
  ToolConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::MalformedConfig, "expected 'key = value'", line_no);
    }
    const auto key = to_lower(detail::trim(body.substr(0, eq)));
    const auto value = detail::trim(body.substr(eq + 1));

    if (key == "scale") {
      cfg.lexicon.native_scale = parse_scale(value);
    } else if (key == "subset") {
      cfg.subset_path = base_dir / std::filesystem::path(std::string(value));
    } else if (key.rfind("emotion.", 0) == 0) {
      const auto e = parse_emotion(key.substr(8));
      if (!e) throw Error(ErrorCode::MalformedConfig, "unknown basic emotion in '" + key + "'", line_no);
      cfg.lexicon.basic_emotions[index_of(*e)] = parse_emotion_source(value, line_no);
    } else if (key == "kmeans.max_iterations") {
      auto x = detail::parse_double(value);
      if (!x || *x < 0 || *x != std::floor(*x)) {
        throw Error(ErrorCode::MalformedConfig, "max_iterations must be a non-negative integer", line_no);
      }
      cfg.kmeans.max_iterations = static_cast<std::size_t>(*x);
    } else if (key == "kmeans.tolerance") {
      auto x = detail::parse_double(value);
      if (!x || *x < 0) throw Error(ErrorCode::MalformedConfig, "bad tolerance", line_no);
      cfg.kmeans.tolerance = *x;
    } else if (key == "kmeans.pin_neutral") {
      cfg.kmeans.pin_neutral = parse_bool(value, line_no);
    } else if (key == "open_vocab.radius") {
      auto x = detail::parse_double(value);
      if (!x || *x < 0) throw Error(ErrorCode::MalformedConfig, "bad radius", line_no);
      cfg.radius = *x;
    } else if (key == "open_vocab.exclude") {
      cfg.exclude = parse_list(value);
    } else {
      throw Error(ErrorCode::MalformedConfig, "unknown key '" + key + "'", line_no);
    }
  }
  return cfg;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ToolConfig load_config(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return parse_config(in, path.parent_path());
}

}  // namespace vadkit
