#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/space.hpp"
#include "vadkit/vad_point.hpp"

namespace vadkit {

struct KMeansParams {
  std::size_t max_iterations = 300;
  double tolerance = 1e-9;
  // Keep the neutral centroid at its seed. Lloyd descent is not guaranteed
  // for the pinned cluster.
  bool pin_neutral = false;

  friend bool operator==(const KMeansParams&, const KMeansParams&) = default;
};

// Reported once at the seeds (iteration 0) and after every update step.
// `wcss` is the nearest-centroid objective for the current centroids.
template <std::size_t K>
struct LloydTrace {
  std::size_t iteration = 0;
  double wcss = 0.0;
  double max_shift = 0.0;
  const std::array<VadPoint, K>* centroids = nullptr;
};

template <std::size_t K>
using LloydObserver = std::function<void(const LloydTrace<K>&)>;

template <std::size_t K>
struct LloydResult {
  std::array<VadPoint, K> centroids;
  std::vector<std::size_t> labels;
  std::size_t iterations_run = 0;
  double wcss = 0.0;
};

// Nearest centroid; ties go to the lowest index.
template <std::size_t K>
std::size_t nearest_centroid(const std::array<VadPoint, K>& centroids, const VadPoint& p) noexcept {
  std::size_t best = 0;
  double best_d = squared_distance(p, centroids[0]);
  for (std::size_t k = 1; k < K; ++k) {
    const double d = squared_distance(p, centroids[k]);
    if (d < best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

template <std::size_t K>
double nearest_objective(std::span<const VadPoint> points,
                         const std::array<VadPoint, K>& centroids) noexcept {
  double total = 0.0;
  for (const auto& p : points) total += squared_distance(p, centroids[nearest_centroid(centroids, p)]);
  return total;
}

// Lloyd's algorithm from fixed initial centroids. Centroid sums run in the
// order of `points`; empty clusters (and pinned ones) keep their centroid.
template <std::size_t K>
LloydResult<K> lloyd(std::span<const VadPoint> points, const std::array<VadPoint, K>& seeds,
                     const KMeansParams& params, std::span<const bool> pinned = {},
                     const LloydObserver<K>& observer = {}) {
  if (points.empty()) throw Error(ErrorCode::EmptySpace, "no points to cluster");
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      if (seeds[i] == seeds[j]) {
        throw Error(ErrorCode::DegenerateSeeds, "seeds " + std::to_string(i) + " and " +
                                                    std::to_string(j) + " coincide");
      }
    }
  }
  auto is_pinned = [&](std::size_t k) { return k < pinned.size() && pinned[k]; };

  LloydResult<K> r;
  r.centroids = seeds;
  r.labels.assign(points.size(), 0);
  if (observer) observer({0, nearest_objective<K>(points, r.centroids), 0.0, &r.centroids});

  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    for (std::size_t i = 0; i < points.size(); ++i) r.labels[i] = nearest_centroid(r.centroids, points[i]);

    std::array<VadPoint, K> sums{};
    std::array<std::size_t, K> counts{};
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto& s = sums[r.labels[i]];
      s.valence += points[i].valence;
      s.arousal += points[i].arousal;
      s.dominance += points[i].dominance;
      ++counts[r.labels[i]];
    }
    double max_shift = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      if (counts[k] == 0 || is_pinned(k)) continue;
      const double n = static_cast<double>(counts[k]);
      const VadPoint next{sums[k].valence / n, sums[k].arousal / n, sums[k].dominance / n};
      max_shift = std::max(max_shift, l2_distance(next, r.centroids[k]));
      r.centroids[k] = next;
    }
    r.iterations_run = it;
    if (observer) observer({it, nearest_objective<K>(points, r.centroids), max_shift, &r.centroids});
    if (max_shift < params.tolerance) break;
  }

  r.wcss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    r.labels[i] = nearest_centroid(r.centroids, points[i]);
    r.wcss += squared_distance(points[i], r.centroids[r.labels[i]]);
  }
  return r;
}

// The fitted six-cluster classifier. Cluster i is initialised at the seed of
// emotion_at(i), so `label_of` is the identity permutation for fitted models;
// it is stored explicitly because it is part of the serialized contract.
struct ClusterModel {
  std::array<VadPoint, kNumEmotions> centroids{};
  std::array<BasicEmotion, kNumEmotions> label_of = kBasicEmotions;
  std::map<std::string, std::size_t> assignments;
  std::size_t iterations_run = 0;
  double final_wcss = 0.0;
  KMeansParams params;
  std::string subset_hash;

  friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

using KMeansObserver = LloydObserver<kNumEmotions>;

inline ClusterModel kmeans_seeded(const EmotionSpace& space, const KMeansParams& params = {},
                                  const KMeansObserver& observer = {}) {
  if (space.empty()) throw Error(ErrorCode::EmptySpace, "emotion space has no entries");
  if (space.size() < kNumEmotions) {
    throw Error(ErrorCode::EmptySpace, "clustering needs at least 6 entries, space has " +
                                           std::to_string(space.size()));
  }
  // Canonical term order makes the floating-point sums independent of the
  // order the lexicon was read in.
  std::vector<std::size_t> order(space.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto entries = space.entries();
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return entries[a].term < entries[b].term; });
  std::vector<VadPoint> points;
  points.reserve(order.size());
  for (auto i : order) points.push_back(entries[i].point);

  std::array<bool, kNumEmotions> pinned{};
  pinned[index_of(BasicEmotion::Neutral)] = params.pin_neutral;

  const auto fit = lloyd<kNumEmotions>(points, space.seeds(), params, pinned, observer);

  ClusterModel model;
  model.centroids = fit.centroids;
  model.iterations_run = fit.iterations_run;
  model.final_wcss = fit.wcss;
  model.params = params;
  model.subset_hash = space.subset_hash();
  for (std::size_t i = 0; i < order.size(); ++i) model.assignments.emplace(entries[order[i]].term, fit.labels[i]);
  return model;
}

inline std::size_t assign(const ClusterModel& model, const VadPoint& point) noexcept {
  return nearest_centroid(model.centroids, point);
}

inline double wcss(const EmotionSpace& space, const ClusterModel& model) {
  std::vector<const SpaceEntry*> sorted;
  sorted.reserve(space.size());
  for (const auto& e : space.entries()) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const SpaceEntry* a, const SpaceEntry* b) { return a->term < b->term; });
  double total = 0.0;
  for (const auto* e : sorted) {
    auto it = model.assignments.find(e->term);
    if (it == model.assignments.end() || it->second >= kNumEmotions) {
      throw Error(ErrorCode::AssignmentMismatch, "term '" + e->term + "' has no cluster assignment");
    }
    total += squared_distance(e->point, model.centroids[it->second]);
  }
  return total;
}

}  // namespace vadkit
