#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "vadkit/clustering.hpp"
#include "vadkit/harness/records.hpp"
#include "vadkit/metrics.hpp"
#include "vadkit/similarity.hpp"
#include "vadkit/transcode.hpp"

namespace vadkit {

struct ContinuousEval {
  double mean_l2 = 0.0;
  double mse = 0.0;
  double mae = 0.0;
  PccVad pcc;
  std::size_t n_samples = 0;

  friend bool operator==(const ContinuousEval&, const ContinuousEval&) = default;
};

struct JoinedSample {
  const SampleRecord* record = nullptr;
  const PredictionRecord* prediction = nullptr;
};

// Predictions matched to manifest records, sorted by sample_id so every
// downstream reduction runs in one fixed order.
struct Join {
  std::vector<JoinedSample> joined;
  std::vector<std::string> unmatched;   // prediction ids absent from the manifest
  std::vector<std::string> unlabeled;   // joined, but the record has no discrete label
  std::size_t clamped = 0;
};

inline Join join_predictions(const std::vector<SampleRecord>& manifest,
                             const std::vector<PredictionRecord>& predictions) {
  std::unordered_map<std::string, const SampleRecord*> by_id;
  for (const auto& r : manifest) by_id.emplace(r.sample_id, &r);
  Join j;
  for (const auto& p : predictions) {
    auto it = by_id.find(p.sample_id);
    if (it == by_id.end()) {
      j.unmatched.push_back(p.sample_id);
      continue;
    }
    if (p.clamped) ++j.clamped;
    if (!it->second->discrete_label) {
      j.unlabeled.push_back(p.sample_id);
      continue;
    }
    j.joined.push_back({it->second, &p});
  }
  std::sort(j.joined.begin(), j.joined.end(), [](const JoinedSample& a, const JoinedSample& b) {
    return a.record->sample_id < b.record->sample_id;
  });
  std::sort(j.unmatched.begin(), j.unmatched.end());
  std::sort(j.unlabeled.begin(), j.unlabeled.end());
  return j;
}

namespace detail {

inline const Join& require_joined(const Join& j) {
  if (!j.unmatched.empty()) {
    throw Error(ErrorCode::UnmatchedSampleId, "prediction '" + j.unmatched.front() +
                                                  "' has no manifest record (" +
                                                  std::to_string(j.unmatched.size()) + " total)");
  }
  if (j.joined.empty()) {
    throw Error(ErrorCode::NoJoinedRecords, "no prediction joins a labelled manifest record");
  }
  return j;
}

}  // namespace detail

// Truth VAD comes from each record's discrete label through the space's
// basic-emotion points.
inline ContinuousEval evaluate_continuous(const Join& join, const EmotionSpace& space) {
  detail::require_joined(join);
  std::vector<VadPoint> truth, pred;
  truth.reserve(join.joined.size());
  pred.reserve(join.joined.size());
  for (const auto& s : join.joined) {
    truth.push_back(discrete_to_vad(space, *s.record->discrete_label));
    pred.push_back(s.prediction->pred_vad);
  }
  ContinuousEval ev;
  ev.n_samples = truth.size();
  ev.mean_l2 = mean_l2(truth, pred);
  ev.mse = mse(truth, pred);
  ev.mae = mae(truth, pred);
  if (truth.size() >= 2) ev.pcc = pcc_vad(truth, pred);
  return ev;
}

inline ContinuousEval evaluate_continuous(const std::vector<SampleRecord>& manifest,
                                          const std::vector<PredictionRecord>& predictions,
                                          const EmotionSpace& space) {
  return evaluate_continuous(join_predictions(manifest, predictions), space);
}

inline BasicEmotion predicted_label(const PredictionRecord& p, const ClusterModel& model) {
  return p.pred_discrete ? *p.pred_discrete : vad_to_discrete(model, p.pred_vad);
}

inline DiscreteEval evaluate_discrete(const Join& join, const ClusterModel& model) {
  detail::require_joined(join);
  std::vector<BasicEmotion> truth, pred;
  for (const auto& s : join.joined) {
    truth.push_back(*s.record->discrete_label);
    pred.push_back(predicted_label(*s.prediction, model));
  }
  return discrete_eval(truth, pred);
}

inline DiscreteEval evaluate_discrete(const std::vector<SampleRecord>& manifest,
                                      const std::vector<PredictionRecord>& predictions,
                                      const ClusterModel& model) {
  return evaluate_discrete(join_predictions(manifest, predictions), model);
}

struct OpenVocabSample {
  OpenVocabResult result;
  std::optional<SetSimilarity> similarity;

  friend bool operator==(const OpenVocabSample&, const OpenVocabSample&) = default;
};

struct OpenVocabRun {
  std::vector<OpenVocabSample> samples;  // sorted by sample_id
  std::optional<SetSimilarity> mean_similarity;
  std::size_t scored = 0;

  friend bool operator==(const OpenVocabRun&, const OpenVocabRun&) = default;
};

// Open-vocabulary sets for every prediction. With a manifest and an
// embedding table, samples carrying open_labels are also scored against them.
// Passing a manifest makes every prediction id mandatory in it.
inline OpenVocabRun run_open_vocab(const std::vector<SampleRecord>* manifest,
                                   const std::vector<PredictionRecord>& predictions,
                                   const EmotionSpace& space, double radius,
                                   const EmbeddingTable* embeddings = nullptr,
                                   std::span<const std::string> exclude = {}) {
  std::unordered_map<std::string, const SampleRecord*> by_id;
  if (manifest) {
    for (const auto& r : *manifest) by_id.emplace(r.sample_id, &r);
  }
  std::vector<const PredictionRecord*> ordered;
  for (const auto& p : predictions) ordered.push_back(&p);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->sample_id < b->sample_id; });

  OpenVocabRun run;
  double score_sum = 0.0, coverage_sum = 0.0;
  for (const auto* p : ordered) {
    OpenVocabSample s{open_vocab(space, p->pred_vad, radius, p->sample_id, exclude), std::nullopt};
    if (manifest) {
      auto it = by_id.find(p->sample_id);
      if (it == by_id.end()) {
        throw Error(ErrorCode::UnmatchedSampleId, "prediction '" + p->sample_id + "' has no manifest record");
      }
      const auto& labels = it->second->open_labels;
      if (embeddings && labels && !labels->empty()) {
        std::vector<std::string> generated;
        for (const auto& n : s.result.terms) generated.push_back(n.term);
        s.similarity = set_similarity(generated, *labels, *embeddings);
        score_sum += s.similarity->score;
        coverage_sum += s.similarity->coverage;
        ++run.scored;
      }
    }
    run.samples.push_back(std::move(s));
  }
  if (run.scored > 0) {
    const double n = static_cast<double>(run.scored);
    run.mean_similarity = SetSimilarity{score_sum / n, coverage_sum / n};
  }
  return run;
}

}  // namespace vadkit
