#include "crown/pipeline.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "crown/cycle.hpp"
#include "crown/planarity.hpp"
#include "crown/star.hpp"

namespace crown {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string trim(std::string s) {
  auto blank = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && blank(s.back())) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && blank(s[i])) ++i;
  return s.substr(i);
}

// Cosine of two 0/1 vectors, rounded to the profit grid: sqrt(c^2 / (|a||b|)).
Rational incidence_cosine(std::size_t common, std::size_t a, std::size_t b) {
  Rational sq = Rational(static_cast<long>(common * common)) / Rational(static_cast<long>(a * b));
  Integer g = kProfitGrid;
  Integer scaled = round_sqrt(sq * g * g);
  if (scaled == 0) scaled = 1;
  Rational out(scaled, g);
  out.canonicalize();
  return out;
}

}  // namespace

Corpus load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw std::invalid_argument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  Corpus corpus;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!in || trim(text).empty()) {
      corpus.skipped.push_back(path.filename().string());
      continue;
    }
    corpus.documents.push_back({path.stem().string(), std::move(text)});
  }
  return corpus;
}

StopWords load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read stop-word list: " + path.string());
  StopWords out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::transform(line.begin(), line.end(), line.begin(), [](unsigned char c) { return std::tolower(c); });
    out.insert(line);
  }
  return out;
}

const StopWords& default_stopwords() {
  static const StopWords words = {
      "a",       "about",  "above",   "after",   "again",   "against", "all",     "also",    "am",      "an",
      "and",     "any",    "are",     "as",      "at",      "be",      "became",  "because", "been",    "before",
      "being",   "below",  "between", "both",    "but",     "by",      "can",     "could",   "did",     "do",
      "does",    "doing",  "down",    "during",  "each",    "even",    "every",   "few",     "for",     "from",
      "further", "had",    "has",     "have",    "having",  "he",      "her",     "here",    "hers",    "herself",
      "him",     "himself", "his",    "how",     "however", "i",       "if",      "in",      "into",    "is",
      "it",      "its",    "itself",  "just",    "many",    "may",     "me",      "might",   "more",    "most",
      "much",    "must",   "my",      "myself",  "no",      "nor",     "not",     "now",     "of",      "off",
      "often",   "on",     "once",    "one",     "only",    "or",      "other",   "our",     "ours",    "ourselves",
      "out",     "over",   "own",     "same",    "she",     "should",  "since",   "so",      "some",    "still",
      "such",    "than",   "that",    "the",     "their",   "theirs",  "them",    "themselves", "then", "there",
      "these",   "they",   "this",    "those",   "though",  "through", "thus",    "to",      "too",     "under",
      "until",   "up",     "upon",    "us",      "very",    "was",     "we",      "were",    "what",    "when",
      "where",   "whether", "which",  "while",   "who",     "whom",    "whose",   "why",     "will",    "with",
      "within",  "without", "would",  "yet",     "you",     "your",    "yours",   "yourself", "yourselves",
  };
  return words;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto flush = [&](std::size_t end) {
    std::string s = trim(std::string(text.substr(start, end - start)));
    if (!s.empty()) out.push_back(std::move(s));
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]))) {
      flush(i + 1);
      start = i + 1;
    }
  }
  if (start < text.size()) flush(text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (unsigned char c : sentence) {
    if (std::isspace(c)) {
      flush();
    } else if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  flush();
  return out;
}

std::string stem(std::string_view word) {
  std::string w(word);
  if (ends_with(w, "ies") && w.size() >= 5) {
    w.replace(w.size() - 3, 3, "y");
  } else if (ends_with(w, "sses")) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "s") && w.size() >= 4 && !ends_with(w, "ss") && !ends_with(w, "us") &&
             !ends_with(w, "is")) {
    w.pop_back();
  }
  if (ends_with(w, "ing") && w.size() >= 6) {
    w.erase(w.size() - 3);
  } else if (ends_with(w, "ed") && w.size() >= 5) {
    w.erase(w.size() - 2);
  }
  return w;
}

std::vector<std::string> WordStats::top(std::size_t k) const {
  std::vector<std::pair<std::string, long>> items(frequency.begin(), frequency.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < items.size() && i < k; ++i) out.push_back(items[i].first);
  return out;
}

WordStats preprocess(std::string_view text, const StopWords& stopwords) {
  WordStats stats;
  std::map<std::string, std::map<std::string, long>> surfaces;
  for (const auto& sentence : split_sentences(text)) {
    std::set<std::string> stems;
    for (const auto& token : tokenize(sentence)) {
      if (stopwords.count(token)) continue;
      std::string s = stem(token);
      ++stats.frequency[s];
      ++surfaces[s][token];
      stems.insert(s);
    }
    if (!stems.empty()) stats.sentences.push_back(std::move(stems));
  }
  for (const auto& [s, forms] : surfaces) {
    const std::string* best = nullptr;
    long count = 0;
    for (const auto& [form, n] : forms) {
      if (n > count) {
        best = &form;
        count = n;
      }
    }
    stats.label[s] = *best;
  }
  return stats;
}

ProfitGraph similarity_profits(const WordStats& stats, std::size_t k, const SimilarityOptions& options) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  std::vector<std::string> words = stats.top(k);
  ProfitGraph graph;
  for (const auto& w : words) graph.add_vertex(w);

  const std::size_t m = stats.sentences.size();
  std::vector<std::vector<std::size_t>> incidence(words.size());
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (stats.sentences[j].count(words[i])) incidence[i].push_back(j);
    }
  }

  if (!options.lsa_rank) {
    for (std::size_t a = 0; a < words.size(); ++a) {
      for (std::size_t b = a + 1; b < words.size(); ++b) {
        std::vector<std::size_t> common;
        std::set_intersection(incidence[a].begin(), incidence[a].end(), incidence[b].begin(), incidence[b].end(),
                              std::back_inserter(common));
        if (common.empty()) continue;
        graph.set_profit(words[a], words[b], incidence_cosine(common.size(), incidence[a].size(), incidence[b].size()));
      }
    }
    return graph;
  }

  int rank = *options.lsa_rank;
  if (rank < 1) throw std::invalid_argument("LSA rank must be positive");
  if (words.empty() || m == 0) return graph;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(words.size()), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (auto j : incidence[i]) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  Eigen::Index r = std::min<Eigen::Index>(rank, svd.singularValues().size());
  Eigen::MatrixXd vectors = svd.matrixU().leftCols(r) * svd.singularValues().head(r).asDiagonal();
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = a + 1; b < words.size(); ++b) {
      auto va = vectors.row(static_cast<Eigen::Index>(a));
      auto vb = vectors.row(static_cast<Eigen::Index>(b));
      double denom = va.norm() * vb.norm();
      if (denom <= 0) continue;
      double cos = std::min(1.0, va.dot(vb) / denom);
      long scaled = std::lround(cos * static_cast<double>(kProfitGrid));
      if (scaled <= 0) continue;
      Rational p(scaled, kProfitGrid);
      p.canonicalize();
      graph.set_profit(words[a], words[b], p);
    }
  }
  return graph;
}

std::vector<BoxSpec> box_dimensions(const WordStats& stats, const std::vector<std::string>& words,
                                    const FontParams& font) {
  long max_freq = 0;
  for (const auto& [s, f] : stats.frequency) max_freq = std::max(max_freq, f);
  std::vector<BoxSpec> out;
  const Rational grid(kSizeGrid);
  for (const auto& w : words) {
    auto it = stats.frequency.find(w);
    if (it == stats.frequency.end()) throw std::invalid_argument("unknown word: " + w);
    Rational ratio = Rational(it->second) / Rational(max_freq);
    Rational height = Rational(round_sqrt(grid * grid * font.base_height * font.base_height * ratio)) / grid;
    height = std::clamp(height, font.min_height, font.base_height);
    height = round_to_grid(height, kSizeGrid);
    const std::string& label = stats.label.at(w);
    Rational width = round_to_grid(height * font.aspect * Rational(static_cast<long>(utf8_length(label))), kSizeGrid);
    if (width <= 0) width = Rational(1, kSizeGrid);
    out.push_back({w, width, height, label});
  }
  return out;
}

Layout random_baseline(const std::vector<BoxSpec>& boxes, std::uint64_t seed) {
  validate_boxes(boxes);
  std::vector<const BoxSpec*> order;
  for (const auto& b : boxes) order.push_back(&b);
  std::stable_sort(order.begin(), order.end(), [](const BoxSpec* a, const BoxSpec* b) {
    if (a->height != b->height) return a->height > b->height;
    if (a->width != b->width) return a->width > b->width;
    return a->id < b->id;
  });

  Layout layout;
  if (order.empty()) return layout;

  struct Rect {
    Rational x0, y0, x1, y1;
    double dx0, dy0, dx1, dy1;
  };
  std::vector<Rect> placed;
  auto add = [&](const BoxSpec& b, const Rational& x, const Rational& y) {
    layout.place(b, x, y);
    Rational x1 = x + b.width, y1 = y + b.height;
    placed.push_back({x, y, x1, y1, x.get_d(), y.get_d(), x1.get_d(), y1.get_d()});
  };
  auto free = [&](const Rational& x, const Rational& y, const BoxSpec& b) {
    Rational x1 = x + b.width, y1 = y + b.height;
    double dx0 = x.get_d(), dy0 = y.get_d(), dx1 = x1.get_d(), dy1 = y1.get_d();
    constexpr double slack = 1e-9;
    for (const auto& r : placed) {
      if (dx1 < r.dx0 - slack || r.dx1 < dx0 - slack || dy1 < r.dy0 - slack || r.dy1 < dy0 - slack) continue;
      if (x < r.x1 && r.x0 < x1 && y < r.y1 && r.y0 < y1) return false;
    }
    return true;
  };

  std::mt19937_64 rng(seed);
  auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const double two_pi = 6.283185307179586;

  const BoxSpec& first = *order[0];
  add(first, 0, 0);
  const double cx = Rational(first.width / 2).get_d();
  const double cy = Rational(first.height / 2).get_d();

  double min_side = first.height.get_d();
  for (const auto* b : order) min_side = std::min({min_side, b->width.get_d(), b->height.get_d()});
  const double spacing = std::max(min_side / 4, 1.0 / kSizeGrid);

  for (std::size_t i = 1; i < order.size(); ++i) {
    const BoxSpec& b = *order[i];
    const double start = unit() * two_pi;
    double t = 0;
    for (;;) {
      double r = spacing * t / two_pi;
      double px = cx + r * std::cos(start + t) - b.width.get_d() / 2;
      double py = cy + r * std::sin(start + t) - b.height.get_d() / 2;
      Rational x = Rational(static_cast<long>(std::lround(px * kSizeGrid)), kSizeGrid);
      Rational y = Rational(static_cast<long>(std::lround(py * kSizeGrid)), kSizeGrid);
      x.canonicalize();
      y.canonicalize();
      if (free(x, y, b)) {
        add(b, x, y);
        break;
      }
      t += std::max(0.05, spacing / std::max(r, spacing));
    }
  }
  return layout;
}

WordCloudInstance build_instance(const WordStats& stats, std::size_t k, const FontParams& font,
                                 const SimilarityOptions& options) {
  WordCloudInstance inst;
  inst.graph = similarity_profits(stats, k, options);
  inst.boxes = box_dimensions(stats, stats.top(k), font);
  return inst;
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::StarForest:
      return "star-forest";
    case Algorithm::CycleCover:
      return "cycle-cover";
    case Algorithm::Random:
      return "random";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (auto a : {Algorithm::StarForest, Algorithm::CycleCover, Algorithm::Random}) {
    if (to_string(a) == name) return a;
  }
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

Layout run_algorithm(Algorithm algo, const WordCloudInstance& inst, const RunOptions& options) {
  switch (algo) {
    case Algorithm::StarForest: {
      ProfitGraph g = is_planar(inst.graph) ? inst.graph : maximal_planar_subgraph(inst.graph);
      return max_crown_stars(g, inst.boxes, options.eps);
    }
    case Algorithm::CycleCover:
      return max_crown_cycles(inst.graph, inst.boxes);
    case Algorithm::Random:
      return random_baseline(inst.boxes, options.seed);
  }
  throw std::invalid_argument("unknown algorithm");
}

Rational BenchRow::percentage() const {
  if (total == 0) return 0;
  return Rational(100) * realized / total;
}

std::map<Algorithm, Rational> BenchReport::means() const {
  std::map<Algorithm, Rational> sum;
  std::map<Algorithm, long> count;
  for (const auto& row : rows) {
    sum[row.algorithm] += row.percentage();
    ++count[row.algorithm];
  }
  for (auto& [a, s] : sum) s /= Rational(count[a]);
  return sum;
}

BenchReport run_bench(const Corpus& corpus, const StopWords& stopwords, const BenchOptions& options) {
  const std::size_t n = corpus.documents.size();
  std::vector<std::vector<BenchRow>> per_doc(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const Document& doc = corpus.documents[i];
      try {
        WordStats stats = preprocess(doc.text, stopwords);
        WordCloudInstance inst = build_instance(stats, options.k, options.font, options.similarity);
        for (auto algo : options.algorithms) {
          auto t0 = std::chrono::steady_clock::now();
          Layout layout = run_algorithm(algo, inst, options.run);
          auto t1 = std::chrono::steady_clock::now();
          validate_layout(layout);
          BenchRow row{doc.id,
                       algo,
                       options.k,
                       realized_profit(layout, inst.graph),
                       inst.graph.total_profit(),
                       inst.graph.max_degree(),
                       std::chrono::duration<double, std::milli>(t1 - t0).count()};
          per_doc[i].push_back(std::move(row));
        }
      } catch (const std::exception& e) {
        per_doc[i].clear();
        errors[i] = doc.id + ": " + e.what();
      }
    }
  };

  unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  BenchReport report;
  report.skipped = corpus.skipped;
  for (std::size_t i = 0; i < n; ++i) {
    if (!errors[i].empty()) {
      report.skipped.push_back(errors[i]);
      continue;
    }
    for (auto& row : per_doc[i]) report.rows.push_back(std::move(row));
  }
  return report;
}

std::string format_percentage(const Rational& pct) {
  Integer tenths = floor(pct * 10 + Rational(1, 2));
  Integer whole = tenths / 10;
  Integer frac = tenths % 10;
  return whole.get_str() + "." + frac.get_str();
}

std::string format_table(const BenchReport& report, std::size_t k) {
  auto means = report.means();
  std::size_t docs = 0;
  std::set<std::string> seen;
  for (const auto& row : report.rows) {
    if (seen.insert(row.doc_id).second) ++docs;
  }
  std::ostringstream out;
  out << "Realized Profit of G_" << k << " (" << docs << " documents)\n";
  out << "algorithm     mean %\n";
  for (auto algo : {Algorithm::CycleCover, Algorithm::StarForest, Algorithm::Random}) {
    auto it = means.find(algo);
    if (it == means.end()) continue;
    std::string name = to_string(algo);
    out << name << std::string(14 - name.size(), ' ') << format_percentage(it->second) << "%\n";
  }
  std::size_t checked = 0, held = 0;
  for (const auto& row : report.rows) {
    if (row.algorithm != Algorithm::CycleCover || row.max_degree == 0) continue;
    ++checked;
    if (row.realized * Rational(static_cast<long>((row.max_degree + 1) / 2)) >= row.total) ++held;
  }
  if (checked > 0) {
    out << "cycle-cover >= total/ceil(D/2) on " << held << "/" << checked << " documents\n";
  }
  return out.str();
}

std::string format_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "doc_id,algorithm,k,realized,total,pct,millis\n";
  for (const auto& row : report.rows) {
    char millis[32];
    std::snprintf(millis, sizeof millis, "%.3f", row.millis);
    out << row.doc_id << ',' << to_string(row.algorithm) << ',' << row.k << ',' << to_string(row.realized) << ','
        << to_string(row.total) << ',' << format_percentage(row.percentage()) << ',' << millis << '\n';
  }
  return out.str();
}

}  // namespace crown
