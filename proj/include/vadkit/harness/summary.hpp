#pragma once

#include <array>
#include <optional>
#include <vector>

#include "vadkit/harness/records.hpp"

namespace vadkit {

struct EmotionSummary {
  std::size_t total = 0;
  std::array<std::size_t, 3> per_split{};  // train, val, test
  std::optional<double> clip_avg;           // C-Avg, seconds
  std::optional<double> word_avg;           // W-Avg

  friend bool operator==(const EmotionSummary&, const EmotionSummary&) = default;
};

struct DatasetSummary {
  std::array<EmotionSummary, kNumEmotions> per_emotion{};
  std::size_t unlabeled = 0;
  std::size_t unsplit = 0;
  std::size_t n_records = 0;

  friend bool operator==(const DatasetSummary&, const DatasetSummary&) = default;
};

inline DatasetSummary summarize_dataset(const std::vector<SampleRecord>& records) {
  DatasetSummary out;
  out.n_records = records.size();
  std::array<double, kNumEmotions> clip_sum{}, word_sum{};
  std::array<std::size_t, kNumEmotions> clip_n{}, word_n{};
  for (const auto& r : records) {
    if (!r.split) ++out.unsplit;
    if (!r.discrete_label) {
      ++out.unlabeled;
      continue;
    }
    const auto k = index_of(*r.discrete_label);
    auto& s = out.per_emotion[k];
    ++s.total;
    if (r.split) ++s.per_split[static_cast<std::size_t>(*r.split)];
    if (r.clip_seconds) {
      clip_sum[k] += *r.clip_seconds;
      ++clip_n[k];
    }
    if (r.word_count) {
      word_sum[k] += static_cast<double>(*r.word_count);
      ++word_n[k];
    }
  }
  for (std::size_t k = 0; k < kNumEmotions; ++k) {
    if (clip_n[k]) out.per_emotion[k].clip_avg = clip_sum[k] / static_cast<double>(clip_n[k]);
    if (word_n[k]) out.per_emotion[k].word_avg = word_sum[k] / static_cast<double>(word_n[k]);
  }
  return out;
}

}  // namespace vadkit
