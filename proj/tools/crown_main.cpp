#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "crown/extremal.hpp"
#include "crown/hier.hpp"
#include "crown/io.hpp"
#include "crown/pipeline.hpp"
#include "crown/svg.hpp"
#include "crown/triangulation.hpp"

using namespace crown;

namespace {

constexpr int kMalformed = 2;
constexpr int kInfeasible = 3;

struct Failure {
  int code;
  Json report;
};

[[noreturn]] void fail(int code, const std::string& stage, const std::string& message,
                       const std::vector<std::string>& witness = {}) {
  throw Failure{code, {{"error", {{"stage", stage}, {"message", message}, {"witness", witness}}}}};
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(kMalformed, "output", "cannot write " + path);
  out << text;
}

Rational rational_option(const std::string& text, const std::string& name) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    fail(kMalformed, "input", "--" + name + ": " + e.what());
  }
}

void emit_layout(const Layout& layout, const ProfitGraph& graph, const std::string& out, const std::string& svg) {
  write_text(out, dump(layout_to_json(make_document(layout, graph))));
  if (!svg.empty()) write_text(svg, render_svg(layout));
}

ProfitGraph unit_graph(const std::vector<BoxSpec>& boxes, const std::vector<std::pair<BoxId, BoxId>>& edges) {
  ProfitGraph g;
  for (const auto& b : boxes) g.add_vertex(b.id);
  for (const auto& [a, b] : edges) g.set_profit(a, b, 1);
  return g;
}

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(kMalformed, "input", "not an integer list: " + text);
    }
  }
  return out;
}

unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CROWN_THREADS")) {
    try {
      long cap = std::stol(env);
      if (cap >= 1) return std::min<unsigned>(hw, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
    }
  }
  return hw;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangle contact representations and semantic word clouds"};
  app.require_subcommand(1);

  std::string input, out, svg, algo = "cycle-cover", eps_text = "1/10", delta_text, stopwords_path, csv_path;
  std::uint64_t seed = 1;
  std::size_t k = 50;
  int lsa_rank = 0;

  auto* layout_cmd = app.add_subcommand("layout", "Lay out a profit instance");
  layout_cmd->add_option("instance", input, "Instance JSON")->required();
  layout_cmd->add_option("--algo", algo, "star-forest, cycle-cover or random");
  layout_cmd->add_option("--eps", eps_text, "Knapsack accuracy");
  layout_cmd->add_option("--seed", seed, "Seed for random");
  layout_cmd->add_option("-o,--out", out, "Layout JSON (default stdout)");
  layout_cmd->add_option("--svg", svg, "SVG output");

  auto* hier_cmd = app.add_subcommand("hier", "Solve a hierarchical instance");
  hier_cmd->add_option("dag", input, "DAG JSON")->required();
  hier_cmd->add_option("--delta", delta_text, "Minimum overlap of every edge");
  hier_cmd->add_option("-o,--out", out, "Layout JSON (default stdout)");
  hier_cmd->add_option("--svg", svg, "SVG output");

  auto* tri_cmd = app.add_subcommand("tri", "Rectangular dual of a triangulation");
  tri_cmd->add_option("instance", input, "Triangulation JSON")->required();
  tri_cmd->add_option("-o,--out", out, "Layout JSON (default stdout)");
  tri_cmd->add_option("--svg", svg, "SVG output");

  std::vector<std::string> bench_algos;
  auto* bench_cmd = app.add_subcommand("bench", "Realized-profit table over a corpus");
  bench_cmd->add_option("corpus", input, "Directory of .txt documents")->required();
  bench_cmd->add_option("--k", k, "Number of words");
  bench_cmd->add_option("--algo", bench_algos, "Algorithms (default all)");
  bench_cmd->add_option("--eps", eps_text, "Knapsack accuracy");
  bench_cmd->add_option("--seed", seed, "Seed for random");
  bench_cmd->add_option("--stopwords", stopwords_path, "Stop-word list");
  bench_cmd->add_option("--lsa-rank", lsa_rank, "Truncated SVD rank (0 = plain cosine)");
  bench_cmd->add_option("--csv", csv_path, "Per-document CSV");

  std::string kind, values_text;
  long m = 0, bound = 0;
  int n = 0;
  auto* inst_cmd = app.add_subcommand("instance", "Generate an instance");
  inst_cmd->add_option("kind", kind, "words, partition, 3partition, extremal or power-squares")->required();
  inst_cmd->add_option("--text", input, "Document for words");
  inst_cmd->add_option("--k", k, "Number of words");
  inst_cmd->add_option("--stopwords", stopwords_path, "Stop-word list");
  inst_cmd->add_option("--lsa-rank", lsa_rank, "Truncated SVD rank (0 = plain cosine)");
  inst_cmd->add_option("--values", values_text, "Comma-separated integers");
  inst_cmd->add_option("--m", m, "Number of triples");
  inst_cmd->add_option("--bound", bound, "Triple sum");
  inst_cmd->add_option("--n", n, "Number of boxes");
  inst_cmd->add_option("-o,--out", out, "Instance JSON (default stdout)");
  inst_cmd->add_option("--svg", svg, "SVG of the witness or arrangement");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    const Rational eps = rational_option(eps_text, "eps");
    if (eps <= 0 || eps >= 1) fail(kMalformed, "input", "--eps must lie in (0, 1)");
    SimilarityOptions similarity;
    if (lsa_rank > 0) similarity.lsa_rank = lsa_rank;
    auto stopwords = [&]() -> StopWords {
      if (stopwords_path.empty()) return default_stopwords();
      try {
        return load_stopwords(stopwords_path);
      } catch (const std::invalid_argument& e) {
        fail(kMalformed, "input", e.what());
      }
    };

    if (*layout_cmd) {
      ProfitInstance inst = instance_from_json(read_json_file(input));
      Algorithm a;
      try {
        a = parse_algorithm(algo);
      } catch (const std::invalid_argument& e) {
        fail(kMalformed, "input", e.what());
      }
      Layout layout = run_algorithm(a, {inst.boxes, inst.graph}, {eps, seed});
      emit_layout(layout, inst.graph, out, svg);
    } else if (*hier_cmd) {
      HierInstance inst = hier_from_json(read_json_file(input));
      std::optional<Rational> delta;
      if (!delta_text.empty()) delta = rational_option(delta_text, "delta");
      if (delta && *delta <= 0) fail(kMalformed, "input", "--delta must be positive");
      HierResult result = solve_hier(inst.dag, inst.boxes, delta);
      if (auto* f = std::get_if<HierFailure>(&result)) fail(kInfeasible, f->stage, f->message, f->witness);
      emit_layout(std::get<Layout>(result), unit_graph(inst.boxes, inst.dag.edges), out, svg);
    } else if (*tri_cmd) {
      TriangulationInstance inst = triangulation_from_json(read_json_file(input));
      auto result = realize_triangulation(inst);
      if (auto* f = std::get_if<TriangulationFailure>(&result)) {
        fail(f->stage == "invalid" ? kMalformed : kInfeasible, f->stage, f->message,
             std::vector<std::string>(f->witness.begin(), f->witness.end()));
      }
      emit_layout(std::get<Layout>(result), inst.graph(), out, svg);
    } else if (*bench_cmd) {
      Corpus corpus;
      try {
        corpus = load_corpus(input);
      } catch (const std::exception& e) {
        fail(kMalformed, "input", e.what());
      }
      BenchOptions options;
      options.k = k;
      options.run = {eps, seed};
      options.similarity = similarity;
      options.threads = thread_count();
      if (!bench_algos.empty()) {
        options.algorithms.clear();
        for (const auto& name : bench_algos) {
          try {
            options.algorithms.push_back(parse_algorithm(name));
          } catch (const std::invalid_argument& e) {
            fail(kMalformed, "input", e.what());
          }
        }
      }
      BenchReport report = run_bench(corpus, stopwords(), options);
      for (const auto& s : report.skipped) std::cerr << "warning: skipped " << s << "\n";
      if (report.rows.empty()) fail(kMalformed, "input", "no document could be processed");
      std::cout << format_table(report, k);
      if (!csv_path.empty()) write_text(csv_path, format_csv(report));
    } else if (*inst_cmd) {
      ProfitInstance inst;
      std::optional<Layout> picture;
      if (kind == "words") {
        std::ifstream in(input, std::ios::binary);
        if (input.empty() || !in) fail(kMalformed, "input", "--text must name a readable file");
        std::ostringstream buf;
        buf << in.rdbuf();
        WordCloudInstance wc = build_instance(preprocess(buf.str(), stopwords()), k, {}, similarity);
        inst.boxes = wc.boxes;
        inst.graph = wc.graph;
      } else if (kind == "partition" || kind == "3partition") {
        std::vector<long> values = parse_longs(values_text);
        GadgetInstance g;
        try {
          g = kind == "partition" ? gen_partition_star_instance(values)
                                  : gen_3partition_tree_instance(values, m, bound);
        } catch (const InvalidInstanceError& e) {
          fail(kMalformed, "input", e.what());
        }
        inst = {g.boxes, g.graph, g.witness};
        picture = g.witness;
      } else if (kind == "extremal" || kind == "power-squares") {
        if (n < 2) fail(kMalformed, "input", "--n must be at least 2");
        inst.boxes = gen_power_squares(n);
        for (const auto& b : inst.boxes) inst.graph.add_vertex(b.id);
        Layout layout = place_extremal(inst.boxes);
        if (kind == "extremal") {
          for (const auto& c : detect_contacts(layout)) inst.graph.set_profit(c.a, c.b, 1);
          inst.witness = layout;
        }
        picture = layout;
      } else {
        fail(kMalformed, "input", "unknown instance kind: " + kind);
      }
      write_text(out, dump(instance_to_json(inst)));
      if (!svg.empty() && picture) write_text(svg, render_svg(*picture));
    }
  } catch (const Failure& f) {
    std::cerr << f.report.dump() << "\n";
    return f.code;
  } catch (const InputError& e) {
    std::cerr << Json{{"error", {{"stage", "input"}, {"message", e.what()}, {"witness", Json::array()}}}}.dump()
              << "\n";
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", {{"stage", "internal"}, {"message", e.what()}, {"witness", Json::array()}}}}.dump()
              << "\n";
    return 1;
  }
  return 0;
}
