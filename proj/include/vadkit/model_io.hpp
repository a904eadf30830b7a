#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "vadkit/clustering.hpp"
#include "vadkit/error.hpp"
#include "vadkit/hash.hpp"

namespace vadkit {

inline constexpr std::string_view kModelFormat = "vadkit-cluster-model";
inline constexpr int kModelVersion = 1;

inline nlohmann::json point_to_json(const VadPoint& p) {
  return nlohmann::json::array({p.valence, p.arousal, p.dominance});
}

inline VadPoint point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() ||
      !j[2].is_number()) {
    throw Error(ErrorCode::MalformedRecord, "expected a [valence, arousal, dominance] triple");
  }
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline nlohmann::json params_to_json(const KMeansParams& p) {
  return {{"max_iterations", p.max_iterations},
          {"tolerance", p.tolerance},
          {"pin_neutral", p.pin_neutral}};
}

inline KMeansParams params_from_json(const nlohmann::json& j) {
  KMeansParams p;
  p.max_iterations = j.at("max_iterations").get<std::size_t>();
  p.tolerance = j.at("tolerance").get<double>();
  p.pin_neutral = j.at("pin_neutral").get<bool>();
  return p;
}

// nlohmann/json prints doubles in shortest round-trip form, so the
// document reproduces every centroid bit for bit.
inline std::string serialize_model(const ClusterModel& model) {
  nlohmann::json clusters = nlohmann::json::array();
  for (std::size_t i = 0; i < kNumEmotions; ++i) {
    clusters.push_back({{"index", i},
                        {"label", std::string(name(model.label_of[i]))},
                        {"centroid", point_to_json(model.centroids[i])}});
  }
  nlohmann::json doc = {
      {"format", kModelFormat},
      {"version", kModelVersion},
      {"clusters", clusters},
      {"assignments", model.assignments},
      {"iterations_run", model.iterations_run},
      {"final_wcss", model.final_wcss},
      {"params", params_to_json(model.params)},
      {"subset_hash", model.subset_hash},
  };
  return doc.dump(2) + "\n";
}

inline ClusterModel parse_model(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("format").get<std::string>() != kModelFormat) {
      throw Error(ErrorCode::MalformedModel, "not a cluster model document");
    }
    if (doc.at("version").get<int>() != kModelVersion) {
      throw Error(ErrorCode::MalformedModel,
                  "unsupported model version " + std::to_string(doc.at("version").get<int>()));
    }
    ClusterModel m;
    const auto& clusters = doc.at("clusters");
    if (!clusters.is_array() || clusters.size() != kNumEmotions) {
      throw Error(ErrorCode::MalformedModel, "expected exactly 6 clusters");
    }
    std::array<bool, kNumEmotions> used{};
    for (const auto& c : clusters) {
      const auto idx = c.at("index").get<std::size_t>();
      const auto label = parse_emotion(c.at("label").get<std::string>());
      if (idx >= kNumEmotions || !label || used[index_of(*label)]) {
        throw Error(ErrorCode::MalformedModel, "cluster labels must be a bijection onto the six emotions");
      }
      used[index_of(*label)] = true;
      m.label_of[idx] = *label;
      m.centroids[idx] = point_from_json(c.at("centroid"));
    }
    m.assignments = doc.at("assignments").get<std::map<std::string, std::size_t>>();
    for (const auto& [term, idx] : m.assignments) {
      if (idx >= kNumEmotions) throw Error(ErrorCode::MalformedModel, "bad cluster index for '" + term + "'");
    }
    m.iterations_run = doc.at("iterations_run").get<std::size_t>();
    m.final_wcss = doc.at("final_wcss").get<double>();
    m.params = params_from_json(doc.at("params"));
    m.subset_hash = doc.at("subset_hash").get<std::string>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedModel, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::MalformedModel) throw;
    throw Error(ErrorCode::MalformedModel, e.what());
  }
}

inline std::string model_fingerprint(const ClusterModel& model) {
  return Fingerprint().add(serialize_model(model)).hex();
}

}  // namespace vadkit
