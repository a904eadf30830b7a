#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/lexicon.hpp"

namespace vadkit {

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(std::size_t dimension) : dimension_(dimension) {}

  void insert(std::string term, std::vector<double> vector, std::optional<std::size_t> line = {}) {
    if (vector.size() != dimension_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "'" + term + "' has " + std::to_string(vector.size()) + " components, expected " +
                      std::to_string(dimension_),
                  line);
    }
    double norm2 = 0.0;
    for (double x : vector) norm2 += x * x;
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
      throw Error(ErrorCode::ZeroVector, "'" + term + "' has zero or non-finite norm", line);
    }
    if (!vectors_.emplace(term, std::move(vector)).second) {
      throw Error(ErrorCode::DuplicateTerm, "'" + term + "' defined twice", line);
    }
  }

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }

  const std::vector<double>* find(std::string_view term) const {
    auto it = vectors_.find(to_lower(term));
    return it == vectors_.end() ? nullptr : &it->second;
  }

 private:
  std::size_t dimension_ = 0;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

// `term v1 ... vd` per line, space-separated. A leading "count dimension"
// line is recognised and skipped.
inline EmbeddingTable load_embeddings(std::istream& source) {
  std::optional<EmbeddingTable> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string_view> tokens;
    for (auto tok : detail::split(detail::trim(line), ' ')) {
      if (!tok.empty()) tokens.push_back(tok);
    }
    if (tokens.empty()) continue;
    if (line_no == 1 && tokens.size() == 2 && tokens[0].find_first_not_of("0123456789") == std::string_view::npos &&
        tokens[1].find_first_not_of("0123456789") == std::string_view::npos) {
      continue;
    }
    if (tokens.size() < 2) {
      throw Error(ErrorCode::DimensionMismatch, "line has a term but no components", line_no);
    }
    std::vector<double> v;
    v.reserve(tokens.size() - 1);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      auto x = detail::parse_double(tokens[i]);
      if (!x) throw Error(ErrorCode::MalformedLine, "unparseable component", line_no);
      v.push_back(*x);
    }
    if (!table) table.emplace(v.size());
    table->insert(to_lower(tokens[0]), std::move(v), line_no);
  }
  return table ? std::move(*table) : EmbeddingTable{};
}

inline double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector sizes differ");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

struct SetSimilarity {
  double score = 0.0;
  double coverage = 0.0;

  friend bool operator==(const SetSimilarity&, const SetSimilarity&) = default;
};

// Symmetric mean best-match cosine. Out-of-vocabulary terms only lower the
// coverage figure.
inline SetSimilarity set_similarity(std::span<const std::string> generated,
                                    std::span<const std::string> reference,
                                    const EmbeddingTable& table) {
  if (generated.empty() || reference.empty()) {
    throw Error(ErrorCode::EmptyInput, "both term lists must be non-empty");
  }
  auto lookup = [&](std::span<const std::string> terms) {
    std::vector<const std::vector<double>*> out;
    for (const auto& t : terms) {
      if (const auto* v = table.find(t)) out.push_back(v);
    }
    return out;
  };
  const auto gen = lookup(generated);
  const auto ref = lookup(reference);
  const double pooled = static_cast<double>(generated.size() + reference.size());
  const double coverage = static_cast<double>(gen.size() + ref.size()) / pooled;
  if (gen.empty() || ref.empty()) {
    throw Error(ErrorCode::NoOverlapWithVocabulary,
                gen.empty() && ref.empty() ? "no term is in the embedding vocabulary"
                                           : "one side has no in-vocabulary terms");
  }
  auto directional = [](const auto& from, const auto& to) {
    double total = 0.0;
    for (const auto* a : from) {
      double best = -1.0;
      for (const auto* b : to) best = std::max(best, cosine(*a, *b));
      total += best;
    }
    return total / static_cast<double>(from.size());
  };
  const double forward = directional(gen, ref);
  const double backward = directional(ref, gen);
  return {(forward + backward) / 2.0, coverage};
}

}  // namespace vadkit
