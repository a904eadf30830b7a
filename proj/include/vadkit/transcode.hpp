#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "vadkit/clustering.hpp"
#include "vadkit/space.hpp"

namespace vadkit {

inline constexpr double kDefaultRadius = 0.25;

struct OpenVocabResult {
  std::string sample_id;
  std::vector<Neighbor> terms;
  double radius_used = 0.0;
  bool fallback_applied = false;

  friend bool operator==(const OpenVocabResult&, const OpenVocabResult&) = default;
};

inline VadPoint discrete_to_vad(const EmotionSpace& space, BasicEmotion label) {
  return space.seed(label);
}

inline BasicEmotion vad_to_discrete(const ClusterModel& model, const VadPoint& point) noexcept {
  return model.label_of[assign(model, point)];
}

// Terms within `radius` of the point. An empty ball falls back to the single
// nearest term and sets `fallback_applied`. Terms listed in `exclude` are
// never returned.
inline OpenVocabResult open_vocab(const EmotionSpace& space, const VadPoint& point, double radius,
                                  std::string sample_id,
                                  std::span<const std::string> exclude = {}) {
  auto excluded = [&](const std::string& term) {
    return std::find(exclude.begin(), exclude.end(), term) != exclude.end();
  };
  OpenVocabResult r;
  r.sample_id = std::move(sample_id);
  r.radius_used = radius;
  r.terms = neighbors_within(space, point, radius);
  std::erase_if(r.terms, [&](const Neighbor& n) { return excluded(n.term); });
  if (r.terms.empty()) {
    r.fallback_applied = true;
    for (auto& n : nearest(space, point, space.size())) {
      if (!excluded(n.term)) {
        r.terms.push_back(std::move(n));
        break;
      }
    }
    if (r.terms.empty()) {
      throw Error(ErrorCode::InvalidArgument, "every term in the space is excluded");
    }
  }
  return r;
}

}  // namespace vadkit
