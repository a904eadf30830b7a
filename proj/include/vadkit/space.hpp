#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/hash.hpp"
#include "vadkit/vad_point.hpp"

namespace vadkit {

struct SpaceEntry {
  std::string term;
  VadPoint point;

  friend bool operator==(const SpaceEntry&, const SpaceEntry&) = default;
};

// The emotion vocabulary embedded in polar VAD space, plus the six resolved
// basic-emotion points. Immutable once constructed; safe to share across
// threads for reading.
class EmotionSpace {
 public:
  EmotionSpace(std::vector<SpaceEntry> entries, std::array<VadPoint, kNumEmotions> seeds)
      : entries_(std::move(entries)), seeds_(seeds) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const auto& e = entries_[i];
      if (!in_polar_range(e.point)) {
        throw Error(ErrorCode::ScoreOutOfRange, "term '" + e.term + "' lies outside [-1,1]^3");
      }
      if (!index_.emplace(e.term, i).second) {
        throw Error(ErrorCode::DuplicateTerm, "term '" + e.term + "' appears twice");
      }
    }
    for (const auto& s : seeds_) {
      if (!in_polar_range(s)) {
        throw Error(ErrorCode::ScoreOutOfRange, "basic-emotion seed lies outside [-1,1]^3");
      }
    }
  }

  std::span<const SpaceEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  const VadPoint& seed(BasicEmotion e) const noexcept { return seeds_[index_of(e)]; }
  const std::array<VadPoint, kNumEmotions>& seeds() const noexcept { return seeds_; }

  std::optional<VadPoint> find(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return entries_[it->second].point;
  }

  // Order-insensitive fingerprint of the vocabulary (terms only).
  std::string subset_hash() const {
    std::vector<std::string_view> terms;
    terms.reserve(entries_.size());
    for (const auto& e : entries_) terms.push_back(e.term);
    std::sort(terms.begin(), terms.end());
    Fingerprint fp;
    for (auto t : terms) fp.field(t);
    return fp.hex();
  }

 private:
  std::vector<SpaceEntry> entries_;
  std::array<VadPoint, kNumEmotions> seeds_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Neighbor {
  std::string term;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

namespace detail {

inline bool neighbor_less(const Neighbor& a, const Neighbor& b) noexcept {
  if (a.distance != b.distance) return a.distance < b.distance;
  return a.term < b.term;
}

inline std::vector<Neighbor> all_distances(const EmotionSpace& space, const VadPoint& query) {
  std::vector<Neighbor> out;
  out.reserve(space.size());
  for (const auto& e : space.entries()) out.push_back({e.term, l2_distance(query, e.point)});
  return out;
}

}  // namespace detail

// Closed ball: terms at distance <= radius, ascending by distance, ties by term.
inline std::vector<Neighbor> neighbors_within(const EmotionSpace& space, const VadPoint& query,
                                              double radius) {
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  std::vector<Neighbor> out;
  for (const auto& e : space.entries()) {
    const double d = l2_distance(query, e.point);
    if (d <= radius) out.push_back({e.term, d});
  }
  std::sort(out.begin(), out.end(), detail::neighbor_less);
  return out;
}

inline std::vector<Neighbor> nearest(const EmotionSpace& space, const VadPoint& query,
                                     std::size_t n) {
  if (n < 1 || n > space.size()) {
    throw Error(ErrorCode::InvalidCount, "requested " + std::to_string(n) +
                                             " neighbours from a space of " +
                                             std::to_string(space.size()));
  }
  auto all = detail::all_distances(space, query);
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    detail::neighbor_less);
  all.resize(n);
  return all;
}

inline double mean_neighbor_count(const EmotionSpace& space, std::span<const VadPoint> probes,
                                  double radius) {
  if (probes.empty()) throw Error(ErrorCode::EmptyProbeSet, "no probe points given");
  if (!(radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be non-negative");
  std::size_t total = 0;
  for (const auto& p : probes) {
    for (const auto& e : space.entries()) {
      if (l2_distance(p, e.point) <= radius) ++total;
    }
  }
  return static_cast<double>(total) / static_cast<double>(probes.size());
}

// Smallest probe-to-entry distance r with mean_neighbor_count(r) >= target_mean.
// The mean is a right-continuous step function of the radius that only
// changes at those distances, so scanning the sorted multiset is exact.
inline double calibrate_radius(const EmotionSpace& space, std::span<const VadPoint> probes,
                               double target_mean) {
  if (probes.empty()) throw Error(ErrorCode::EmptyProbeSet, "no probe points given");
  if (!(target_mean > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "target mean must be positive");
  }
  if (target_mean > static_cast<double>(space.size())) {
    throw Error(ErrorCode::TargetUnreachable,
                "target mean exceeds the " + std::to_string(space.size()) + " entries available");
  }
  std::vector<double> distances;
  distances.reserve(probes.size() * space.size());
  for (const auto& p : probes) {
    for (const auto& e : space.entries()) distances.push_back(l2_distance(p, e.point));
  }
  std::sort(distances.begin(), distances.end());
  const double needed = target_mean * static_cast<double>(probes.size());
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (static_cast<double>(i + 1) >= needed) return distances[i];
  }
  return distances.back();
}

}  // namespace vadkit
