#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/vad_point.hpp"

namespace vadkit {

namespace detail {

template <typename A, typename B>
void require_paired(std::span<const A> truth, std::span<const B> pred) {
  if (truth.size() != pred.size()) {
    throw Error(ErrorCode::LengthMismatch, "truth has " + std::to_string(truth.size()) +
                                               " items, prediction has " +
                                               std::to_string(pred.size()));
  }
  if (truth.empty()) throw Error(ErrorCode::EmptyInput, "no samples");
}

inline std::array<double, 3> components(const VadPoint& p) noexcept {
  return {p.valence, p.arousal, p.dominance};
}

}  // namespace detail

// Mean over all 3N scalar components.
inline double mse(std::span<const VadPoint> truth, std::span<const VadPoint> pred) {
  detail::require_paired(truth, pred);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += squared_distance(truth[i], pred[i]);
  return total / (3.0 * static_cast<double>(truth.size()));
}

inline double mae(std::span<const VadPoint> truth, std::span<const VadPoint> pred) {
  detail::require_paired(truth, pred);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const auto t = detail::components(truth[i]);
    const auto p = detail::components(pred[i]);
    for (std::size_t d = 0; d < 3; ++d) total += std::abs(t[d] - p[d]);
  }
  return total / (3.0 * static_cast<double>(truth.size()));
}

inline double mean_l2(std::span<const VadPoint> truth, std::span<const VadPoint> pred) {
  detail::require_paired(truth, pred);
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) total += l2_distance(truth[i], pred[i]);
  return total / static_cast<double>(truth.size());
}

// Pearson correlation. Empty optional when either series is constant.
inline std::optional<double> pcc(std::span<const double> truth, std::span<const double> pred) {
  if (truth.size() != pred.size()) {
    throw Error(ErrorCode::LengthMismatch, "series lengths differ");
  }
  if (truth.size() < 2) throw Error(ErrorCode::TooFewSamples, "PCC needs at least 2 samples");
  auto constant = [](std::span<const double> s) {
    return std::all_of(s.begin(), s.end(), [&](double x) { return x == s.front(); });
  };
  if (constant(truth) || constant(pred)) return std::nullopt;

  const double n = static_cast<double>(truth.size());
  double mean_t = 0.0, mean_p = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    mean_t += truth[i];
    mean_p += pred[i];
  }
  mean_t /= n;
  mean_p /= n;
  double cov = 0.0, var_t = 0.0, var_p = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double dt = truth[i] - mean_t;
    const double dp = pred[i] - mean_p;
    cov += dt * dp;
    var_t += dt * dt;
    var_p += dp * dp;
  }
  if (var_t == 0.0 || var_p == 0.0) return std::nullopt;
  return std::clamp(cov / (std::sqrt(var_t) * std::sqrt(var_p)), -1.0, 1.0);
}

struct PccVad {
  std::array<std::optional<double>, 3> per_dim;
  std::optional<double> mean;       // mean of the defined per-dimension values
  std::optional<double> flattened;  // single PCC over all 3N scalars

  friend bool operator==(const PccVad&, const PccVad&) = default;
};

inline PccVad pcc_vad(std::span<const VadPoint> truth, std::span<const VadPoint> pred) {
  if (truth.size() != pred.size()) throw Error(ErrorCode::LengthMismatch, "series lengths differ");
  if (truth.size() < 2) throw Error(ErrorCode::TooFewSamples, "PCC needs at least 2 samples");
  PccVad out;
  std::vector<double> t(truth.size()), p(pred.size());
  std::vector<double> flat_t, flat_p;
  flat_t.reserve(3 * truth.size());
  flat_p.reserve(3 * truth.size());
  double sum = 0.0;
  int defined = 0;
  for (std::size_t d = 0; d < 3; ++d) {
    for (std::size_t i = 0; i < truth.size(); ++i) {
      t[i] = detail::components(truth[i])[d];
      p[i] = detail::components(pred[i])[d];
    }
    out.per_dim[d] = pcc(t, p);
    if (out.per_dim[d]) {
      sum += *out.per_dim[d];
      ++defined;
    }
    flat_t.insert(flat_t.end(), t.begin(), t.end());
    flat_p.insert(flat_p.end(), p.begin(), p.end());
  }
  if (defined > 0) out.mean = sum / defined;
  out.flattened = pcc(flat_t, flat_p);
  return out;
}

using ClassProbabilities = std::array<double, kNumEmotions>;

inline constexpr double kProbabilityFloor = 1e-12;

// Mean negative log-likelihood of the true class.
inline double cross_entropy(std::span<const ClassProbabilities> truth_onehot,
                            std::span<const ClassProbabilities> pred_prob) {
  detail::require_paired(truth_onehot, pred_prob);
  double total = 0.0;
  for (std::size_t i = 0; i < truth_onehot.size(); ++i) {
    std::size_t hot = kNumEmotions;
    int ones = 0;
    for (std::size_t k = 0; k < kNumEmotions; ++k) {
      const double y = truth_onehot[i][k];
      if (y == 1.0) {
        hot = k;
        ++ones;
      } else if (y != 0.0) {
        ones = -1;
        break;
      }
    }
    if (ones != 1) throw Error(ErrorCode::NotOneHot, "row " + std::to_string(i) + " is not one-hot");

    double mass = 0.0;
    for (double p : pred_prob[i]) {
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorCode::NotAProbability, "row " + std::to_string(i) + " has a negative entry");
      }
      mass += p;
    }
    if (std::abs(mass - 1.0) > 1e-9) {
      throw Error(ErrorCode::NotAProbability, "row " + std::to_string(i) + " does not sum to 1");
    }
    total += -std::log(std::max(pred_prob[i][hot], kProbabilityFloor));
  }
  return total / static_cast<double>(truth_onehot.size());
}

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;

  friend bool operator==(const ClassMetrics&, const ClassMetrics&) = default;
};

using ConfusionMatrix = std::array<std::array<std::size_t, kNumEmotions>, kNumEmotions>;

struct DiscreteEval {
  ConfusionMatrix confusion{};  // rows: truth, columns: prediction
  std::array<ClassMetrics, kNumEmotions> per_class{};
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  double weighted_precision = 0.0;
  double weighted_recall = 0.0;
  double weighted_f1 = 0.0;
  double accuracy = 0.0;
  std::size_t n_samples = 0;

  friend bool operator==(const DiscreteEval&, const DiscreteEval&) = default;
};

inline DiscreteEval discrete_eval(std::span<const BasicEmotion> truth,
                                  std::span<const BasicEmotion> pred) {
  detail::require_paired(truth, pred);
  DiscreteEval ev;
  ev.n_samples = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) ++ev.confusion[index_of(truth[i])][index_of(pred[i])];

  std::size_t trace = 0;
  for (std::size_t k = 0; k < kNumEmotions; ++k) {
    std::size_t row = 0, col = 0;
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      row += ev.confusion[k][j];
      col += ev.confusion[j][k];
    }
    const std::size_t tp = ev.confusion[k][k];
    trace += tp;
    auto& m = ev.per_class[k];
    m.support = row;
    m.precision = col == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(col);
    m.recall = row == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(row);
    m.f1 = (m.precision + m.recall) == 0.0
               ? 0.0
               : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }

  const double n = static_cast<double>(ev.n_samples);
  for (const auto& m : ev.per_class) {
    ev.macro_precision += m.precision;
    ev.macro_recall += m.recall;
    ev.macro_f1 += m.f1;
    const double w = static_cast<double>(m.support) / n;
    ev.weighted_precision += w * m.precision;
    ev.weighted_recall += w * m.recall;
    ev.weighted_f1 += w * m.f1;
  }
  ev.macro_precision /= kNumEmotions;
  ev.macro_recall /= kNumEmotions;
  ev.macro_f1 /= kNumEmotions;
  ev.accuracy = static_cast<double>(trace) / n;
  return ev;
}

// Micro-averaged F1 from the pooled confusion counts, in the count form
// 2tp / (2tp + fp + fn).
inline double micro_f1(const DiscreteEval& ev) noexcept {
  std::size_t tp = 0, predicted = 0, actual = 0;
  for (std::size_t k = 0; k < kNumEmotions; ++k) {
    tp += ev.confusion[k][k];
    for (std::size_t j = 0; j < kNumEmotions; ++j) {
      predicted += ev.confusion[j][k];
      actual += ev.confusion[k][j];
    }
  }
  if (predicted + actual == 0) return 0.0;
  return static_cast<double>(2 * tp) / static_cast<double>(predicted + actual);
}

}  // namespace vadkit
