#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "crown/geometry.hpp"

namespace crown {

struct Document {
  std::string id;
  std::string text;
};

// Every `.txt` file in `dir`, sorted by file name; the id is the file stem.
// Unreadable or empty files are reported in `skipped` instead.
struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> skipped;
};
Corpus load_corpus(const std::filesystem::path& dir);

using StopWords = std::set<std::string>;

// One word per line; blank lines and lines starting with '#' are ignored.
StopWords load_stopwords(const std::filesystem::path& path);
const StopWords& default_stopwords();

// Splits on '.', '!' or '?' followed by whitespace or the end of the text.
std::vector<std::string> split_sentences(std::string_view text);

// Whitespace-separated tokens, lowercased, with non-alphanumerics removed.
std::vector<std::string> tokenize(std::string_view sentence);

// Suffix rules, first match wins, then a second pass for -ing / -ed:
//   ies -> y, sses -> ss, s -> "" (not after s, u or i)
//   ing -> "", ed -> ""
// A rule only fires when at least three characters remain.
std::string stem(std::string_view word);

struct WordStats {
  std::map<std::string, long> frequency;       // stem -> occurrences
  std::map<std::string, std::string> label;    // stem -> most frequent surface form
  std::vector<std::set<std::string>> sentences;  // stems per sentence

  bool empty() const { return frequency.empty(); }
  // The k most frequent stems, ties by stem.
  std::vector<std::string> top(std::size_t k) const;
};

WordStats preprocess(std::string_view text, const StopWords& stopwords);

struct SimilarityOptions {
  // Rank of the truncated SVD applied to the word-sentence matrix; unset
  // means plain co-occurrence cosine.
  std::optional<int> lsa_rank;
};

// Profits are cosines rounded to multiples of 2^-20 (never rounded to zero).
// Non-positive similarities are omitted.
inline constexpr long kProfitGrid = 1L << 20;
ProfitGraph similarity_profits(const WordStats& stats, std::size_t k, const SimilarityOptions& options = {});

struct FontParams {
  Rational base_height = 2;
  Rational min_height = Rational(1, 2);
  Rational aspect = Rational(11, 20);
};

inline constexpr long kSizeGrid = 64;

// One box per stem in `words`: height base * sqrt(freq / max_freq), clamped,
// width height * aspect * label length; both on the 1/64 grid.
std::vector<BoxSpec> box_dimensions(const WordStats& stats, const std::vector<std::string>& words,
                                    const FontParams& font = {});

// Boxes by decreasing height (then width, then id), each at the first free
// point of an Archimedean spiral around the first box, from a seeded start
// angle. Positions are on the 1/64 grid.
Layout random_baseline(const std::vector<BoxSpec>& boxes, std::uint64_t seed);

struct WordCloudInstance {
  std::vector<BoxSpec> boxes;
  ProfitGraph graph;
};

// G_k with its boxes. Vertices without edges are still boxes.
WordCloudInstance build_instance(const WordStats& stats, std::size_t k, const FontParams& font = {},
                                 const SimilarityOptions& options = {});

enum class Algorithm { StarForest, CycleCover, Random };

std::string to_string(Algorithm algo);
// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(std::string_view name);

struct RunOptions {
  Rational eps = Rational(1, 10);
  std::uint64_t seed = 1;
};

// Star forest runs on a maximal planar subgraph when the graph is not planar.
Layout run_algorithm(Algorithm algo, const WordCloudInstance& inst, const RunOptions& options = {});

struct BenchRow {
  std::string doc_id;
  Algorithm algorithm;
  std::size_t k;
  Rational realized;
  Rational total;
  std::size_t max_degree;
  double millis;

  // 100 * realized / total, or 0 for an empty graph.
  Rational percentage() const;
};

struct BenchReport {
  std::vector<BenchRow> rows;  // document order, then algorithm order
  std::vector<std::string> skipped;

  // Mean percentage per algorithm over documents.
  std::map<Algorithm, Rational> means() const;
};

struct BenchOptions {
  std::size_t k = 50;
  std::vector<Algorithm> algorithms{Algorithm::CycleCover, Algorithm::StarForest, Algorithm::Random};
  RunOptions run;
  FontParams font;
  SimilarityOptions similarity;
  unsigned threads = 1;
};

BenchReport run_bench(const Corpus& corpus, const StopWords& stopwords, const BenchOptions& options);

// Percentage with one decimal, e.g. "17.8".
std::string format_percentage(const Rational& pct);
std::string format_table(const BenchReport& report, std::size_t k);
// doc_id,algorithm,k,realized,total,pct,millis
std::string format_csv(const BenchReport& report);

}  // namespace crown
