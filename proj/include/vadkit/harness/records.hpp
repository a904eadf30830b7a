#pragma once

#include <cmath>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/lexicon.hpp"
#include "vadkit/model_io.hpp"
#include "vadkit/vad_point.hpp"

namespace vadkit {

enum class Split : std::uint8_t { Train, Val, Test };

inline constexpr std::array<Split, 3> kSplits = {Split::Train, Split::Val, Split::Test};

constexpr std::string_view name(Split s) noexcept {
  switch (s) {
    case Split::Train: return "train";
    case Split::Val: return "val";
    case Split::Test: return "test";
  }
  return "";
}

inline std::optional<Split> parse_split(std::string_view text) {
  const auto t = to_lower(text);
  for (Split s : kSplits) {
    if (t == name(s)) return s;
  }
  return std::nullopt;
}

// One manifest line. Field names on disk match the member names.
struct SampleRecord {
  std::string sample_id;
  std::optional<BasicEmotion> discrete_label;
  std::optional<std::vector<std::string>> open_labels;
  std::optional<double> clip_seconds;
  std::optional<std::size_t> word_count;
  std::optional<Split> split;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

// One predictions line: {"sample_id": ..., "vad": [v, a, d], "discrete": <optional>}.
// Out-of-range components are clamped on load and flagged.
struct PredictionRecord {
  std::string sample_id;
  VadPoint pred_vad;
  bool clamped = false;
  std::optional<BasicEmotion> pred_discrete;

  friend bool operator==(const PredictionRecord&, const PredictionRecord&) = default;
};

namespace detail {

template <typename Fn>
void for_each_json_line(std::istream& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
    if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "record is not an object", line_no);
    try {
      fn(j, line_no);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, e.what(), line_no);
    }
  }
}

inline std::string require_id(const nlohmann::json& j, std::size_t line_no) {
  auto it = j.find("sample_id");
  if (it == j.end() || !it->is_string() || it->get<std::string>().empty()) {
    throw Error(ErrorCode::MalformedRecord, "missing or empty sample_id", line_no);
  }
  return it->get<std::string>();
}

inline BasicEmotion require_emotion(const nlohmann::json& j, std::size_t line_no) {
  if (!j.is_string()) throw Error(ErrorCode::MalformedRecord, "label must be a string", line_no);
  auto e = parse_emotion(j.get<std::string>());
  if (!e) {
    throw Error(ErrorCode::UnknownLabel, "'" + j.get<std::string>() + "' is not a basic emotion",
                line_no);
  }
  return *e;
}

}  // namespace detail

inline std::vector<SampleRecord> load_manifest(std::istream& source) {
  static const std::unordered_set<std::string> known = {
      "sample_id", "discrete_label", "open_labels", "clip_seconds", "word_count", "split"};
  std::vector<SampleRecord> out;
  std::unordered_set<std::string> ids;
  detail::for_each_json_line(source, [&](const nlohmann::json& j, std::size_t line_no) {
    for (const auto& item : j.items()) {
      if (!known.contains(item.key())) {
        throw Error(ErrorCode::MalformedRecord, "unknown field '" + item.key() + "'", line_no);
      }
    }
    SampleRecord r;
    r.sample_id = detail::require_id(j, line_no);
    if (auto it = j.find("discrete_label"); it != j.end()) {
      r.discrete_label = detail::require_emotion(*it, line_no);
    }
    if (auto it = j.find("open_labels"); it != j.end()) {
      if (!it->is_array()) throw Error(ErrorCode::MalformedRecord, "open_labels must be a list", line_no);
      std::vector<std::string> labels;
      for (const auto& l : *it) labels.push_back(to_lower(l.get<std::string>()));
      r.open_labels = std::move(labels);
    }
    if (auto it = j.find("clip_seconds"); it != j.end()) {
      const double s = it->get<double>();
      if (!(s > 0.0) || !std::isfinite(s)) {
        throw Error(ErrorCode::MalformedRecord, "clip_seconds must be positive", line_no);
      }
      r.clip_seconds = s;
    }
    if (auto it = j.find("word_count"); it != j.end()) {
      if (!it->is_number_unsigned()) {
        throw Error(ErrorCode::MalformedRecord, "word_count must be a non-negative integer", line_no);
      }
      r.word_count = it->get<std::size_t>();
    }
    if (auto it = j.find("split"); it != j.end()) {
      auto s = parse_split(it->get<std::string>());
      if (!s) throw Error(ErrorCode::MalformedRecord, "split must be train, val or test", line_no);
      r.split = s;
    }
    if (!ids.insert(r.sample_id).second) {
      throw Error(ErrorCode::DuplicateSampleId, "sample_id '" + r.sample_id + "' repeats", line_no);
    }
    out.push_back(std::move(r));
  });
  return out;
}

inline nlohmann::json to_json(const SampleRecord& r) {
  nlohmann::json j = {{"sample_id", r.sample_id}};
  if (r.discrete_label) j["discrete_label"] = name(*r.discrete_label);
  if (r.open_labels) j["open_labels"] = *r.open_labels;
  if (r.clip_seconds) j["clip_seconds"] = *r.clip_seconds;
  if (r.word_count) j["word_count"] = *r.word_count;
  if (r.split) j["split"] = name(*r.split);
  return j;
}

inline void write_manifest(std::ostream& out, const std::vector<SampleRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline std::vector<PredictionRecord> load_predictions(std::istream& source) {
  std::vector<PredictionRecord> out;
  std::unordered_set<std::string> ids;
  detail::for_each_json_line(source, [&](const nlohmann::json& j, std::size_t line_no) {
    PredictionRecord r;
    r.sample_id = detail::require_id(j, line_no);
    auto it = j.find("vad");
    if (it == j.end()) throw Error(ErrorCode::MalformedRecord, "missing vad", line_no);
    VadPoint raw;
    try {
      raw = point_from_json(*it);
    } catch (const Error&) {
      throw Error(ErrorCode::MalformedRecord, "vad must be [valence, arousal, dominance]", line_no);
    }
    if (!is_finite(raw)) throw Error(ErrorCode::MalformedRecord, "vad is not finite", line_no);
    const auto c = clamp_to_polar(raw);
    r.pred_vad = c.point;
    r.clamped = c.clamped;
    if (auto d = j.find("discrete"); d != j.end()) r.pred_discrete = detail::require_emotion(*d, line_no);
    if (!ids.insert(r.sample_id).second) {
      throw Error(ErrorCode::DuplicateSampleId, "sample_id '" + r.sample_id + "' repeats", line_no);
    }
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace vadkit
