#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "vadkit/harness/records.hpp"

namespace vadkit {

using SplitRatios = std::array<double, 3>;

namespace detail {

// Uniform integer in [0, bound) by rejection, so the sequence depends only on
// the mt19937_64 output stream (which the standard pins down exactly).
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Largest-remainder apportionment of n items; ties go to the earlier split.
inline std::array<std::size_t, 3> apportion(std::size_t n, const SplitRatios& ratios) {
  std::array<std::size_t, 3> counts{};
  std::array<double, 3> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double quota = static_cast<double>(n) * ratios[i];
    counts[i] = static_cast<std::size_t>(std::floor(quota));
    remainder[i] = quota - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 3, ++assigned) ++counts[order[k]];
  return counts;
}

}  // namespace detail

// Stratified by discrete label. Within each label the records (in manifest
// order) are permuted by a seeded Fisher-Yates shuffle and cut into
// train/val/test blocks. Records come back in their original order.
inline std::vector<SampleRecord> split_manifest(std::vector<SampleRecord> records,
                                                const SplitRatios& ratios, std::uint64_t seed) {
  double total = 0.0;
  for (double r : ratios) {
    if (!(r >= 0.0)) throw Error(ErrorCode::InvalidArgument, "split ratios must be non-negative");
    total += r;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "split ratios must sum to 1");
  }
  for (const auto& r : records) {
    if (!r.discrete_label) {
      throw Error(ErrorCode::MissingLabels,
                  "sample '" + r.sample_id + "' has no discrete_label to stratify on");
    }
  }
  for (BasicEmotion e : kBasicEmotions) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (*records[i].discrete_label == e) members.push_back(i);
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index_of(e))};
    std::mt19937_64 rng(seq);
    for (std::size_t i = members.size(); i > 1; --i) {
      std::swap(members[i - 1], members[detail::uniform_below(rng, i)]);
    }
    const auto counts = detail::apportion(members.size(), ratios);
    std::size_t pos = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      for (std::size_t c = 0; c < counts[s]; ++c) records[members[pos++]].split = kSplits[s];
    }
  }
  return records;
}

}  // namespace vadkit
