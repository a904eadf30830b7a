#pragma once

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "vadkit/harness/evaluate.hpp"
#include "vadkit/harness/summary.hpp"
#include "vadkit/model_io.hpp"
#include "vadkit/version.hpp"

namespace vadkit {

struct Provenance {
  std::string config_hash;
  std::string subset_hash;
  std::string model_hash;
  KMeansParams model_params;
  double radius = kDefaultRadius;
  std::string tool_version{kVersion};

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct JoinStats {
  std::size_t predictions = 0;
  std::size_t joined = 0;     // matched a manifest record
  std::size_t unmatched = 0;
  std::size_t unlabeled = 0;  // matched, but excluded for lack of a label
  std::size_t clamped = 0;

  friend bool operator==(const JoinStats&, const JoinStats&) = default;
};

struct EvaluationReport {
  ContinuousEval continuous;
  DiscreteEval discrete;
  std::optional<SetSimilarity> open_vocab_similarity;
  DatasetSummary dataset_summary;
  JoinStats join;
  Provenance provenance;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

inline JoinStats join_stats(const Join& j, std::size_t predictions) {
  return {predictions, j.joined.size() + j.unlabeled.size(), j.unmatched.size(),
          j.unlabeled.size(), j.clamped};
}

enum class ReportFormat { Structured, Table };

namespace detail {

inline constexpr std::array<std::string_view, 3> kDims = {"valence", "arousal", "dominance"};

inline void put(nlohmann::json& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

inline std::optional<double> get_opt(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) return std::nullopt;
  return it->get<double>();
}

inline nlohmann::json to_json(const ContinuousEval& c) {
  nlohmann::json pcc_dims = nlohmann::json::object();
  for (std::size_t d = 0; d < 3; ++d) {
    if (c.pcc.per_dim[d]) pcc_dims[std::string(kDims[d])] = *c.pcc.per_dim[d];
  }
  nlohmann::json j = {{"mean_l2", c.mean_l2},
                      {"mse", c.mse},
                      {"mae", c.mae},
                      {"n_samples", c.n_samples},
                      {"pcc_per_dim", pcc_dims}};
  put(j, "pcc_mean", c.pcc.mean);
  put(j, "pcc_flattened", c.pcc.flattened);
  return j;
}

inline ContinuousEval continuous_from_json(const nlohmann::json& j) {
  ContinuousEval c;
  c.mean_l2 = j.at("mean_l2").get<double>();
  c.mse = j.at("mse").get<double>();
  c.mae = j.at("mae").get<double>();
  c.n_samples = j.at("n_samples").get<std::size_t>();
  const auto& dims = j.at("pcc_per_dim");
  for (std::size_t d = 0; d < 3; ++d) c.pcc.per_dim[d] = get_opt(dims, kDims[d].data());
  c.pcc.mean = get_opt(j, "pcc_mean");
  c.pcc.flattened = get_opt(j, "pcc_flattened");
  return c;
}

inline nlohmann::json to_json(const DiscreteEval& d) {
  nlohmann::json per_class = nlohmann::json::object();
  nlohmann::json labels = nlohmann::json::array();
  for (BasicEmotion e : kBasicEmotions) {
    const auto& m = d.per_class[index_of(e)];
    labels.push_back(name(e));
    per_class[std::string(name(e))] = {
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
  }
  return {{"labels", labels},
          {"confusion", d.confusion},
          {"per_class", per_class},
          {"macro", {{"precision", d.macro_precision}, {"recall", d.macro_recall}, {"f1", d.macro_f1}}},
          {"weighted",
           {{"precision", d.weighted_precision}, {"recall", d.weighted_recall}, {"f1", d.weighted_f1}}},
          {"accuracy", d.accuracy},
          {"n_samples", d.n_samples}};
}

inline DiscreteEval discrete_from_json(const nlohmann::json& j) {
  DiscreteEval d;
  d.confusion = j.at("confusion").get<ConfusionMatrix>();
  for (BasicEmotion e : kBasicEmotions) {
    const auto& m = j.at("per_class").at(std::string(name(e)));
    d.per_class[index_of(e)] = {m.at("precision").get<double>(), m.at("recall").get<double>(),
                                m.at("f1").get<double>(), m.at("support").get<std::size_t>()};
  }
  const auto& macro = j.at("macro");
  d.macro_precision = macro.at("precision").get<double>();
  d.macro_recall = macro.at("recall").get<double>();
  d.macro_f1 = macro.at("f1").get<double>();
  const auto& weighted = j.at("weighted");
  d.weighted_precision = weighted.at("precision").get<double>();
  d.weighted_recall = weighted.at("recall").get<double>();
  d.weighted_f1 = weighted.at("f1").get<double>();
  d.accuracy = j.at("accuracy").get<double>();
  d.n_samples = j.at("n_samples").get<std::size_t>();
  return d;
}

inline nlohmann::json to_json(const DatasetSummary& s) {
  nlohmann::json per = nlohmann::json::object();
  for (BasicEmotion e : kBasicEmotions) {
    const auto& row = s.per_emotion[index_of(e)];
    nlohmann::json r = {{"total", row.total},
                        {"train", row.per_split[0]},
                        {"val", row.per_split[1]},
                        {"test", row.per_split[2]}};
    put(r, "clip_avg", row.clip_avg);
    put(r, "word_avg", row.word_avg);
    per[std::string(name(e))] = r;
  }
  return {{"per_emotion", per},
          {"unlabeled", s.unlabeled},
          {"unsplit", s.unsplit},
          {"n_records", s.n_records}};
}

inline DatasetSummary summary_from_json(const nlohmann::json& j) {
  DatasetSummary s;
  for (BasicEmotion e : kBasicEmotions) {
    const auto& r = j.at("per_emotion").at(std::string(name(e)));
    auto& row = s.per_emotion[index_of(e)];
    row.total = r.at("total").get<std::size_t>();
    row.per_split = {r.at("train").get<std::size_t>(), r.at("val").get<std::size_t>(),
                     r.at("test").get<std::size_t>()};
    row.clip_avg = get_opt(r, "clip_avg");
    row.word_avg = get_opt(r, "word_avg");
  }
  s.unlabeled = j.at("unlabeled").get<std::size_t>();
  s.unsplit = j.at("unsplit").get<std::size_t>();
  s.n_records = j.at("n_records").get<std::size_t>();
  return s;
}

inline std::string fixed(std::optional<double> v, int precision = 4) {
  if (!v) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, *v);
  return buf;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string pad_right(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string title(std::string_view s) {
  std::string out(s);
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const SetSimilarity& s) {
  return {{"score", s.score}, {"coverage", s.coverage}};
}

inline nlohmann::json summary_to_json(const DatasetSummary& s) { return detail::to_json(s); }

inline nlohmann::json report_to_json(const EvaluationReport& r) {
  nlohmann::json j = {
      {"format", "vadkit-evaluation-report"},
      {"version", 1},
      {"continuous", detail::to_json(r.continuous)},
      {"discrete", detail::to_json(r.discrete)},
      {"dataset_summary", detail::to_json(r.dataset_summary)},
      {"join",
       {{"predictions", r.join.predictions},
        {"joined", r.join.joined},
        {"unmatched", r.join.unmatched},
        {"unlabeled", r.join.unlabeled},
        {"clamped", r.join.clamped}}},
      {"provenance",
       {{"config_hash", r.provenance.config_hash},
        {"subset_hash", r.provenance.subset_hash},
        {"model_hash", r.provenance.model_hash},
        {"model_params", params_to_json(r.provenance.model_params)},
        {"radius", r.provenance.radius},
        {"tool_version", r.provenance.tool_version}}},
  };
  if (r.open_vocab_similarity) j["open_vocab_similarity"] = to_json(*r.open_vocab_similarity);
  return j;
}

inline EvaluationReport parse_report(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("format").get<std::string>() != "vadkit-evaluation-report") {
      throw Error(ErrorCode::MalformedRecord, "not an evaluation report");
    }
    EvaluationReport r;
    r.continuous = detail::continuous_from_json(j.at("continuous"));
    r.discrete = detail::discrete_from_json(j.at("discrete"));
    r.dataset_summary = detail::summary_from_json(j.at("dataset_summary"));
    const auto& jn = j.at("join");
    r.join = {jn.at("predictions").get<std::size_t>(), jn.at("joined").get<std::size_t>(),
              jn.at("unmatched").get<std::size_t>(), jn.at("unlabeled").get<std::size_t>(),
              jn.at("clamped").get<std::size_t>()};
    const auto& p = j.at("provenance");
    r.provenance.config_hash = p.at("config_hash").get<std::string>();
    r.provenance.subset_hash = p.at("subset_hash").get<std::string>();
    r.provenance.model_hash = p.at("model_hash").get<std::string>();
    r.provenance.model_params = params_from_json(p.at("model_params"));
    r.provenance.radius = p.at("radius").get<double>();
    r.provenance.tool_version = p.at("tool_version").get<std::string>();
    if (auto it = j.find("open_vocab_similarity"); it != j.end()) {
      r.open_vocab_similarity = SetSimilarity{it->at("score").get<double>(), it->at("coverage").get<double>()};
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, std::string("report: ") + e.what());
  }
}

// Dataset distribution in the layout of the usual emotion-corpus table.
inline std::string summary_table(const DatasetSummary& s) {
  using detail::pad;
  std::ostringstream out;
  out << "Dataset distribution (C-Avg: mean clip seconds, W-Avg: mean word count)\n";
  out << detail::pad_right("Emotion", 10) << pad("Total", 7) << pad("Train", 7) << pad("Val", 6)
      << pad("Test", 6) << pad("C-Avg", 8) << pad("W-Avg", 8) << '\n';
  for (BasicEmotion e : kBasicEmotions) {
    const auto& row = s.per_emotion[index_of(e)];
    out << detail::pad_right(detail::title(name(e)), 10) << pad(std::to_string(row.total), 7)
        << pad(std::to_string(row.per_split[0]), 7) << pad(std::to_string(row.per_split[1]), 6)
        << pad(std::to_string(row.per_split[2]), 6)
        << pad(row.clip_avg ? detail::fixed(row.clip_avg, 2) + "s" : "n/a", 8)
        << pad(detail::fixed(row.word_avg, 2), 8) << '\n';
  }
  out << "Records: " << s.n_records << " (unlabeled " << s.unlabeled << ", unsplit " << s.unsplit
      << ")\n";
  return out.str();
}

inline std::string report_table(const EvaluationReport& r) {
  using detail::fixed;
  using detail::pad;
  std::ostringstream out;
  out << summary_table(r.dataset_summary) << '\n';

  const auto& c = r.continuous;
  out << "Continuous emotion detection (n=" << c.n_samples << ")\n";
  out << pad("L2 distance", 12) << pad("MSE", 8) << pad("MAE", 8) << pad("PCC", 8)
      << pad("PCC-flat", 10) << '\n';
  out << pad(fixed(c.mean_l2), 12) << pad(fixed(c.mse), 8) << pad(fixed(c.mae), 8)
      << pad(fixed(c.pcc.mean), 8) << pad(fixed(c.pcc.flattened), 10) << '\n';
  out << "PCC per dimension: valence " << fixed(c.pcc.per_dim[0]) << ", arousal "
      << fixed(c.pcc.per_dim[1]) << ", dominance " << fixed(c.pcc.per_dim[2]) << "\n\n";

  const auto& d = r.discrete;
  out << "Discrete emotion detection (n=" << d.n_samples << ")\n";
  out << detail::pad_right("", 10) << pad("F1", 8) << pad("Precision", 11) << pad("Recall", 8) << '\n';
  out << detail::pad_right("macro", 10) << pad(fixed(d.macro_f1), 8) << pad(fixed(d.macro_precision), 11)
      << pad(fixed(d.macro_recall), 8) << '\n';
  out << detail::pad_right("weighted", 10) << pad(fixed(d.weighted_f1), 8)
      << pad(fixed(d.weighted_precision), 11) << pad(fixed(d.weighted_recall), 8) << '\n';
  out << "Accuracy: " << fixed(d.accuracy) << "\n\n";

  out << detail::pad_right("Class", 10) << pad("F1", 8) << pad("Precision", 11) << pad("Recall", 8)
      << pad("Support", 9) << '\n';
  for (BasicEmotion e : kBasicEmotions) {
    const auto& m = d.per_class[index_of(e)];
    out << detail::pad_right(detail::title(name(e)), 10) << pad(fixed(m.f1), 8)
        << pad(fixed(m.precision), 11) << pad(fixed(m.recall), 8)
        << pad(std::to_string(m.support), 9) << '\n';
  }
  out << "\nConfusion (rows: truth, columns: prediction)\n" << detail::pad_right("", 10);
  for (BasicEmotion e : kBasicEmotions) out << pad(detail::title(name(e)), 10);
  out << '\n';
  for (BasicEmotion t : kBasicEmotions) {
    out << detail::pad_right(detail::title(name(t)), 10);
    for (BasicEmotion p : kBasicEmotions) {
      out << pad(std::to_string(d.confusion[index_of(t)][index_of(p)]), 10);
    }
    out << '\n';
  }

  if (r.open_vocab_similarity) {
    out << "\nOpen-vocabulary similarity: score " << fixed(r.open_vocab_similarity->score)
        << ", coverage " << fixed(r.open_vocab_similarity->coverage) << '\n';
  }
  out << "\nJoin: " << r.join.predictions << " predictions, " << r.join.joined << " joined, "
      << r.join.unmatched << " unmatched, " << r.join.unlabeled << " unlabeled, " << r.join.clamped
      << " clamped\n";
  const auto& p = r.provenance;
  out << "Provenance: vadkit " << p.tool_version << ", config " << p.config_hash << ", subset "
      << p.subset_hash << ", model " << p.model_hash << ", radius " << detail::format_double(p.radius)
      << '\n';
  return out.str();
}

inline std::string emit_report(const EvaluationReport& report, ReportFormat format) {
  if (format == ReportFormat::Table) return report_table(report);
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace vadkit
