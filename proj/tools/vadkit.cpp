// vadkit command-line front end. Reports go to stdout (or --out); every
// diagnostic goes to stderr. Exit status: 0 ok, 1 usage error, 2 data error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "vadkit/vadkit.hpp"

namespace fs = std::filesystem;
using namespace vadkit;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string config;
  std::string lexicon;
  std::string subset;
  std::string scale;
  std::string manifest;
  std::string predictions;
  std::string model;
  std::string embeddings;
  std::optional<double> radius;
  double target_mean = 5.0;
  std::string ratios = "0.7,0.15,0.15";
  std::uint64_t seed = 0;
  std::string format;
  std::string out;
  std::string report_file;
};

std::istringstream open_text(const std::string& path) { return std::istringstream(read_file(path)); }

ToolConfig resolve_config(const Options& o) {
  ToolConfig cfg = o.config.empty() ? ToolConfig{} : load_config(o.config);
  if (!o.scale.empty()) {
    try {
      cfg.lexicon.native_scale = parse_scale(o.scale);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
  }
  if (!o.subset.empty()) cfg.subset_path = o.subset;
  if (cfg.subset_path) {
    auto in = open_text(cfg.subset_path->string());
    cfg.lexicon.subset_terms = parse_subset(in);
  }
  if (o.radius) {
    if (*o.radius < 0) throw UsageError("--radius must be non-negative");
    cfg.radius = *o.radius;
  }
  return cfg;
}

EmotionSpace load_space(const Options& o, const ToolConfig& cfg) {
  if (o.lexicon.empty()) throw UsageError("--lexicon is required");
  auto in = open_text(o.lexicon);
  return build_space(parse_lexicon(in, cfg.lexicon), cfg.lexicon);
}

ClusterModel obtain_model(const Options& o, const ToolConfig& cfg, const EmotionSpace& space) {
  if (o.model.empty()) return kmeans_seeded(space, cfg.kmeans);
  auto model = parse_model(read_file(o.model));
  if (model.subset_hash != space.subset_hash()) {
    throw Error(ErrorCode::MalformedModel, "model '" + o.model +
                                               "' was fitted on a different vocabulary (subset hash " +
                                               model.subset_hash + " vs " + space.subset_hash() + ")");
  }
  return model;
}

std::vector<SampleRecord> load_manifest_file(const std::string& path) {
  if (path.empty()) throw UsageError("--manifest is required");
  auto in = open_text(path);
  return load_manifest(in);
}

std::vector<PredictionRecord> load_predictions_file(const std::string& path) {
  if (path.empty()) throw UsageError("--predictions is required");
  auto in = open_text(path);
  return load_predictions(in);
}

ReportFormat report_format(const std::string& text, ReportFormat fallback) {
  if (text.empty()) return fallback;
  if (text == "structured") return ReportFormat::Structured;
  if (text == "table") return ReportFormat::Table;
  throw UsageError("--format must be 'structured' or 'table'");
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + o.out + "'");
  f << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json neighbors_json(const std::vector<Neighbor>& ns) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& n : ns) arr.push_back({{"term", n.term}, {"distance", n.distance}});
  return arr;
}

// --- commands --------------------------------------------------------------

void cmd_build_space(const Options& o) {
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  if (report_format(o.format, ReportFormat::Table) == ReportFormat::Table) {
    std::ostringstream ss;
    write_space(ss, space);
    emit(o, ss.str());
    return;
  }
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : space.entries()) entries.push_back({{"term", e.term}, {"vad", point_to_json(e.point)}});
  nlohmann::json seeds = nlohmann::json::object();
  for (BasicEmotion e : kBasicEmotions) seeds[std::string(name(e))] = point_to_json(space.seed(e));
  emit(o, dump({{"entries", entries},
                {"seeds", seeds},
                {"size", space.size()},
                {"subset_hash", space.subset_hash()}}));
}

void cmd_fit_clusters(const Options& o) {
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  emit(o, serialize_model(kmeans_seeded(space, cfg.kmeans)));
}

void cmd_transcode(const Options& o) {
  if (o.predictions.empty() && o.manifest.empty()) {
    throw UsageError("transcode needs --predictions (VAD to label) or --manifest (label to VAD)");
  }
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  std::ostringstream out;
  if (!o.manifest.empty()) {
    for (const auto& r : load_manifest_file(o.manifest)) {
      if (!r.discrete_label) continue;
      nlohmann::json j = {{"sample_id", r.sample_id},
                          {"discrete", name(*r.discrete_label)},
                          {"vad", point_to_json(discrete_to_vad(space, *r.discrete_label))}};
      out << j.dump() << '\n';
    }
  }
  if (!o.predictions.empty()) {
    const auto model = obtain_model(o, cfg, space);
    for (const auto& p : load_predictions_file(o.predictions)) {
      const auto cluster = assign(model, p.pred_vad);
      nlohmann::json j = {{"sample_id", p.sample_id},
                          {"vad", point_to_json(p.pred_vad)},
                          {"clamped", p.clamped},
                          {"cluster", cluster},
                          {"discrete", name(model.label_of[cluster])}};
      out << j.dump() << '\n';
    }
  }
  emit(o, out.str());
}

void cmd_open_vocab(const Options& o) {
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  const auto predictions = load_predictions_file(o.predictions);
  std::optional<std::vector<SampleRecord>> manifest;
  if (!o.manifest.empty()) manifest = load_manifest_file(o.manifest);
  std::optional<EmbeddingTable> table;
  if (!o.embeddings.empty()) {
    auto in = open_text(o.embeddings);
    table = load_embeddings(in);
  }
  const auto run = run_open_vocab(manifest ? &*manifest : nullptr, predictions, space, cfg.radius,
                                  table ? &*table : nullptr, cfg.exclude);

  if (report_format(o.format, ReportFormat::Structured) == ReportFormat::Table) {
    std::ostringstream out;
    for (const auto& s : run.samples) {
      out << s.result.sample_id << (s.result.fallback_applied ? " (fallback)" : "") << ":";
      for (const auto& n : s.result.terms) out << ' ' << n.term;
      if (s.similarity) out << "  [similarity " << detail::fixed(s.similarity->score) << "]";
      out << '\n';
    }
    if (run.mean_similarity) {
      out << "mean similarity " << detail::fixed(run.mean_similarity->score) << ", coverage "
          << detail::fixed(run.mean_similarity->coverage) << '\n';
    }
    emit(o, out.str());
    return;
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : run.samples) {
    nlohmann::json j = {{"sample_id", s.result.sample_id},
                        {"terms", neighbors_json(s.result.terms)},
                        {"radius_used", s.result.radius_used},
                        {"fallback_applied", s.result.fallback_applied}};
    if (s.similarity) j["similarity"] = to_json(*s.similarity);
    samples.push_back(j);
  }
  nlohmann::json doc = {{"radius", cfg.radius}, {"samples", samples}};
  if (run.mean_similarity) doc["mean_similarity"] = to_json(*run.mean_similarity);
  emit(o, dump(doc));
}

void cmd_calibrate_radius(const Options& o) {
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  std::vector<VadPoint> probes;
  std::string source = "lexicon";
  if (!o.predictions.empty()) {
    for (const auto& p : load_predictions_file(o.predictions)) probes.push_back(p.pred_vad);
    source = "predictions";
  } else {
    for (const auto& e : space.entries()) probes.push_back(e.point);
  }
  const double radius = calibrate_radius(space, probes, o.target_mean);
  emit(o, dump({{"radius", radius},
                {"mean_neighbor_count", mean_neighbor_count(space, probes, radius)},
                {"target_mean", o.target_mean},
                {"probe_source", source},
                {"probe_count", probes.size()},
                {"space_size", space.size()}}));
}

SplitRatios parse_ratios(const std::string& text) {
  const auto parts = detail::split(text, ',');
  if (parts.size() != 3) throw UsageError("--ratios takes three comma-separated numbers");
  SplitRatios r{};
  for (std::size_t i = 0; i < 3; ++i) {
    auto x = detail::parse_double(parts[i]);
    if (!x) throw UsageError("--ratios component '" + std::string(parts[i]) + "' is not a number");
    r[i] = *x;
  }
  return r;
}

void cmd_split(const Options& o) {
  const auto ratios = parse_ratios(o.ratios);
  auto records = split_manifest(load_manifest_file(o.manifest), ratios, o.seed);
  std::ostringstream out;
  write_manifest(out, records);
  emit(o, out.str());
}

void cmd_summarize(const Options& o) {
  const auto summary = summarize_dataset(load_manifest_file(o.manifest));
  if (report_format(o.format, ReportFormat::Structured) == ReportFormat::Table) {
    emit(o, summary_table(summary));
  } else {
    emit(o, dump(summary_to_json(summary)));
  }
}

void cmd_evaluate(const Options& o) {
  const auto format = report_format(o.format, ReportFormat::Structured);
  const auto cfg = resolve_config(o);
  const auto space = load_space(o, cfg);
  const auto model = obtain_model(o, cfg, space);
  const auto manifest = load_manifest_file(o.manifest);
  const auto predictions = load_predictions_file(o.predictions);

  const auto join = join_predictions(manifest, predictions);
  EvaluationReport report;
  report.continuous = evaluate_continuous(join, space);
  report.discrete = evaluate_discrete(join, model);
  report.dataset_summary = summarize_dataset(manifest);
  report.join = join_stats(join, predictions.size());
  if (!o.embeddings.empty()) {
    auto in = open_text(o.embeddings);
    const auto table = load_embeddings(in);
    const auto run = run_open_vocab(&manifest, predictions, space, cfg.radius, &table, cfg.exclude);
    report.open_vocab_similarity = run.mean_similarity;
  }
  report.provenance.config_hash = cfg.hash();
  report.provenance.subset_hash = space.subset_hash();
  report.provenance.model_hash = model_fingerprint(model);
  report.provenance.model_params = model.params;
  report.provenance.radius = cfg.radius;
  emit(o, emit_report(report, format));
}

void cmd_report(const Options& o) {
  if (o.report_file.empty()) throw UsageError("report needs a structured report file");
  const auto report = parse_report(read_file(o.report_file));
  emit(o, emit_report(report, report_format(o.format, ReportFormat::Table)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vadkit: valence-arousal-dominance emotion space toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto space_flags = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config, "Key-value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--lexicon", o.lexicon, "Tab-separated VAD lexicon")->check(CLI::ExistingFile);
    cmd->add_option("--subset", o.subset, "Vocabulary subset, one term per line")->check(CLI::ExistingFile);
    cmd->add_option("--scale", o.scale, "Native lexicon scale: unit or polar");
  };
  auto out_flag = [&](CLI::App* cmd) { cmd->add_option("--out", o.out, "Write output here instead of stdout"); };
  auto format_flag = [&](CLI::App* cmd) {
    cmd->add_option("--format", o.format, "structured or table")->check(CLI::IsMember({"structured", "table"}));
  };

  auto* build = app.add_subcommand("build-space", "Rescale the lexicon and write the emotion space");
  space_flags(build);
  format_flag(build);
  out_flag(build);

  auto* fit = app.add_subcommand("fit-clusters", "Fit the seeded six-cluster model");
  space_flags(fit);
  out_flag(fit);

  auto* transcode = app.add_subcommand("transcode", "Map predictions to labels and labels to VAD points");
  space_flags(transcode);
  transcode->add_option("--predictions", o.predictions)->check(CLI::ExistingFile);
  transcode->add_option("--manifest", o.manifest)->check(CLI::ExistingFile);
  transcode->add_option("--model", o.model)->check(CLI::ExistingFile);
  out_flag(transcode);

  auto* open = app.add_subcommand("open-vocab", "Open-vocabulary emotion sets within a radius");
  space_flags(open);
  open->add_option("--predictions", o.predictions)->check(CLI::ExistingFile);
  open->add_option("--manifest", o.manifest)->check(CLI::ExistingFile);
  open->add_option("--embeddings", o.embeddings)->check(CLI::ExistingFile);
  open->add_option("--radius", o.radius);
  format_flag(open);
  out_flag(open);

  auto* calibrate = app.add_subcommand("calibrate-radius", "Smallest radius reaching a mean neighbour count");
  space_flags(calibrate);
  calibrate->add_option("--target-mean", o.target_mean, "Mean neighbours per probe")->capture_default_str();
  calibrate->add_option("--predictions", o.predictions, "Use predicted points as probes")->check(CLI::ExistingFile);
  out_flag(calibrate);

  auto* split = app.add_subcommand("split", "Stratified seeded train/val/test split");
  split->add_option("--manifest", o.manifest)->check(CLI::ExistingFile);
  split->add_option("--ratios", o.ratios, "train,val,test")->capture_default_str();
  split->add_option("--seed", o.seed)->capture_default_str();
  out_flag(split);

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against a manifest");
  space_flags(evaluate);
  evaluate->add_option("--manifest", o.manifest)->check(CLI::ExistingFile);
  evaluate->add_option("--predictions", o.predictions)->check(CLI::ExistingFile);
  evaluate->add_option("--model", o.model)->check(CLI::ExistingFile);
  evaluate->add_option("--embeddings", o.embeddings)->check(CLI::ExistingFile);
  evaluate->add_option("--radius", o.radius);
  format_flag(evaluate);
  out_flag(evaluate);

  auto* summarize = app.add_subcommand("summarize", "Per-emotion dataset distribution");
  summarize->add_option("--manifest", o.manifest)->check(CLI::ExistingFile);
  format_flag(summarize);
  out_flag(summarize);

  auto* report = app.add_subcommand("report", "Render a structured evaluation report");
  report->add_option("report", o.report_file, "Structured report file")->check(CLI::ExistingFile);
  format_flag(report);
  out_flag(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "vadkit: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*build) cmd_build_space(o);
    else if (*fit) cmd_fit_clusters(o);
    else if (*transcode) cmd_transcode(o);
    else if (*open) cmd_open_vocab(o);
    else if (*calibrate) cmd_calibrate_radius(o);
    else if (*split) cmd_split(o);
    else if (*evaluate) cmd_evaluate(o);
    else if (*summarize) cmd_summarize(o);
    else if (*report) cmd_report(o);
  } catch (const UsageError& e) {
    std::cerr << "vadkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "vadkit: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
