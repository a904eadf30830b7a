#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "vadkit/config.hpp"

namespace vadkit {
namespace {

ErrorCode code_of(const std::string& text) {
  auto in = fixtures::text(text);
  try {
    parse_config(in);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

TEST(Config, Defaults) {
  auto in = fixtures::text("# nothing\n\n");
  const auto cfg = parse_config(in);
  EXPECT_EQ(cfg.lexicon.native_scale, NativeScale::UnitInterval);
  EXPECT_FALSE(cfg.subset_path);
  EXPECT_EQ(cfg.kmeans.max_iterations, 300u);
  EXPECT_EQ(cfg.kmeans.tolerance, 1e-9);
  EXPECT_FALSE(cfg.kmeans.pin_neutral);
  EXPECT_EQ(cfg.radius, 0.25);
  EXPECT_EQ(std::get<VadPoint>(cfg.lexicon.basic_emotions[index_of(BasicEmotion::Neutral)]),
            (VadPoint{0, 0, 0}));
}

TEST(Config, ParsesEveryKey) {
  auto in = fixtures::text(
      "scale = polar\n"
      "subset = terms.txt  # relative\n"
      "emotion.angry = Furious\n"
      "emotion.neutral = 0.1, -0.2, 0\n"
      "kmeans.max_iterations = 50\n"
      "kmeans.tolerance = 1e-6\n"
      "kmeans.pin_neutral = yes\n"
      "open_vocab.radius = 0.3\n"
      "open_vocab.exclude = Neutral, calm\n");
  const auto cfg = parse_config(in, "/cfg");
  EXPECT_EQ(cfg.lexicon.native_scale, NativeScale::Polar);
  EXPECT_EQ(*cfg.subset_path, std::filesystem::path("/cfg/terms.txt"));
  EXPECT_EQ(std::get<std::string>(cfg.lexicon.basic_emotions[index_of(BasicEmotion::Angry)]), "furious");
  EXPECT_EQ(std::get<VadPoint>(cfg.lexicon.basic_emotions[index_of(BasicEmotion::Neutral)]),
            (VadPoint{0.1, -0.2, 0}));
  EXPECT_EQ(cfg.kmeans.max_iterations, 50u);
  EXPECT_EQ(cfg.kmeans.tolerance, 1e-6);
  EXPECT_TRUE(cfg.kmeans.pin_neutral);
  EXPECT_EQ(cfg.radius, 0.3);
  EXPECT_EQ(cfg.exclude, (std::vector<std::string>{"neutral", "calm"}));
}

TEST(Config, Rejections) {
  EXPECT_EQ(code_of("colour = red\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("scale\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("scale = percent\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("emotion.bored = sad\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("emotion.sad = 0.1, 0.2\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("emotion.sad = 2, 0, 0\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("kmeans.max_iterations = 2.5\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("kmeans.pin_neutral = maybe\n"), ErrorCode::MalformedConfig);
  EXPECT_EQ(code_of("open_vocab.radius = -1\n"), ErrorCode::MalformedConfig);
}

TEST(Config, ErrorCarriesLineNumber) {
  auto in = fixtures::text("scale = unit\n\nbogus = 1\n");
  try {
    parse_config(in);
    FAIL();
  } catch (const Error& e) {
    ASSERT_TRUE(e.line());
    EXPECT_EQ(*e.line(), 3u);
  }
}

TEST(Config, ShippedConfigLoads) {
  const auto cfg = fixtures::default_config();
  ASSERT_TRUE(cfg.lexicon.subset_terms);
  EXPECT_EQ(cfg.lexicon.subset_terms->size(), 195u);
  EXPECT_EQ(cfg.radius, 0.25);
}

TEST(Config, HashTracksResultAffectingSettings) {
  auto a = fixtures::default_config();
  auto b = a;
  EXPECT_EQ(a.hash(), b.hash());
  b.radius = 0.3;
  EXPECT_NE(a.hash(), b.hash());
  b = a;
  b.kmeans.pin_neutral = true;
  EXPECT_NE(a.hash(), b.hash());
  b = a;
  b.subset_path = "/elsewhere/subset.txt";
  EXPECT_EQ(a.hash(), b.hash());
}

TEST(Config, MissingFileIsIoError) {
  try {
    load_config("/nonexistent/vadkit.conf");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

}  // namespace
}  // namespace vadkit
