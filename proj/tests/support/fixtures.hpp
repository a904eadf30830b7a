#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "vadkit/vadkit.hpp"

namespace fixtures {

inline std::filesystem::path data_dir() { return VADKIT_DATA_DIR; }
inline std::filesystem::path fixture_dir() { return VADKIT_FIXTURE_DIR; }

inline std::string lexicon_path() { return (data_dir() / "fixture_lexicon.tsv").string(); }
inline std::string config_path() { return (data_dir() / "vadkit.conf").string(); }

inline vadkit::ToolConfig default_config() {
  auto cfg = vadkit::load_config(config_path());
  std::ifstream subset(*cfg.subset_path);
  cfg.lexicon.subset_terms = vadkit::parse_subset(subset);
  return cfg;
}

inline std::vector<vadkit::RawLexiconEntry> lexicon_entries() {
  std::ifstream in(lexicon_path());
  return vadkit::parse_lexicon(in, vadkit::LexiconConfig{});
}

// The shipped 195-term subset space.
inline const vadkit::EmotionSpace& space() {
  static const vadkit::EmotionSpace s = [] {
    const auto cfg = default_config();
    return vadkit::build_space(lexicon_entries(), cfg.lexicon);
  }();
  return s;
}

inline const vadkit::ClusterModel& model() {
  static const vadkit::ClusterModel m = vadkit::kmeans_seeded(space(), default_config().kmeans);
  return m;
}

inline std::istringstream text(const std::string& s) { return std::istringstream(s); }

}  // namespace fixtures
