// One PASS/FAIL line per acceptance criterion.
// usage: acceptance <crown-cli> <corpus-dir> [scratch-dir]

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "crown/cycle.hpp"
#include "crown/extremal.hpp"
#include "crown/hier.hpp"
#include "crown/io.hpp"
#include "crown/pipeline.hpp"
#include "crown/star.hpp"
#include "crown/triangulation.hpp"
#include "testkit.hpp"

using namespace crown;
using testkit::Rng;
using testkit::uniform;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const Rational& r, int digits = 4) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << r.get_d();
  return out.str();
}

bool closed_touch(const PlacedBox& a, const PlacedBox& b) {
  return a.left() <= b.right() && b.left() <= a.right() && a.bottom() <= b.top() && b.bottom() <= a.top();
}

const Rational kEps(1, 10);
const Rational kAlpha = (1 - kEps) / (2 - kEps);

Outcome cycle_cover_bound() {
  Rng rng(101);
  std::size_t checked = 0;
  for (int t = 0; checked < 200; ++t) {
    auto n = static_cast<std::size_t>(uniform(rng, 3, 50));
    auto boxes = testkit::random_boxes(rng, n, 8, 4);
    auto max_deg = static_cast<std::size_t>(uniform(rng, 1, 8));
    auto graph = testkit::random_graph(rng, boxes, max_deg, 0.1 + 0.8 * static_cast<double>(t % 9) / 8);
    Layout layout = max_crown_cycles(graph, boxes);
    validate_layout(layout);
    std::size_t delta = graph.max_degree();
    if (delta == 0) continue;
    long k = static_cast<long>((delta + 1) / 2);
    Rational realized = realized_profit(layout, graph);
    if (realized * k < graph.total_profit()) {
      return {false, "graph " + std::to_string(t) + ": realized " + to_string(realized) + " < total/" +
                         std::to_string(k) + " = " + to_string(graph.total_profit() / k)};
    }
    ++checked;
  }
  return {true, std::to_string(checked) + " graphs, every one at least total/ceil(D/2)"};
}

Outcome cycle_layouts() {
  Rng rng(202);
  for (int t = 0; t < 10000; ++t) {
    auto n = static_cast<std::size_t>(uniform(rng, 3, 50));
    auto boxes = testkit::random_boxes(rng, n, 10, 8);
    Layout layout = layout_cycle(boxes);
    if (layout.size() != n) return {false, "cycle " + std::to_string(t) + " lost boxes"};
    try {
      validate_layout(layout);
    } catch (const OverlapError& e) {
      return {false, "cycle " + std::to_string(t) + ": " + e.what()};
    }
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = layout.at(boxes[i].id);
      const auto& b = layout.at(boxes[(i + 1) % n].id);
      if (!closed_touch(a, b)) {
        return {false, "cycle " + std::to_string(t) + ": " + a.spec.id + " does not touch " + b.spec.id};
      }
    }
  }
  return {true, "10000 cycles, all edges touching, no overlaps"};
}

Outcome star_ratio() {
  Rng rng(303);
  Rational worst = 2;
  int good = 0;
  for (int t = 0; t < 100; ++t) {
    auto inst = testkit::random_star(rng, static_cast<std::size_t>(uniform(rng, 1, 9)));
    ProfitGraph g;
    g.add_vertex(inst.center.id);
    for (const auto& [id, p] : inst.profits) g.set_profit(inst.center.id, id, p);
    auto opt = testkit::star_oracle(inst);
    if (realized_profit(opt.layout, g) != opt.value) return {false, "oracle layout disagrees with its value"};
    Layout layout = solve_star(inst, kEps);
    validate_layout(layout);
    Rational got = realized_profit(layout, g);
    if (got < kAlpha * opt.value) {
      return {false, "star " + std::to_string(t) + ": " + to_string(got) + " < alpha * " + to_string(opt.value)};
    }
    Rational ratio = opt.value == 0 ? Rational(1) : Rational(got / opt.value);
    worst = std::min(worst, ratio);
    if (ratio >= Rational(9, 10)) ++good;
  }
  return {true, "100 stars, worst ratio " + fmt(worst) + ", " + std::to_string(good) + "/100 at least 0.9"};
}

Outcome tree_ratio() {
  Rng rng(404);
  Rational worst = 2;
  for (int t = 0; t < 50; ++t) {
    auto n = static_cast<std::size_t>(uniform(rng, 2, 6));
    auto boxes = testkit::random_boxes(rng, n, 3, 1);
    auto tree = testkit::random_tree(rng, boxes, 9);
    Rational opt = testkit::tree_oracle(tree, boxes);
    Layout layout = max_crown_stars(tree, boxes, kEps);
    validate_layout(layout);
    Rational got = realized_profit(layout, tree);
    if (got < kAlpha / 2 * opt) {
      return {false, "tree " + std::to_string(t) + ": " + to_string(got) + " < alpha/2 * " + to_string(opt)};
    }
    worst = std::min(worst, opt == 0 ? Rational(1) : Rational(got / opt));
  }
  return {true, "50 trees, worst ratio to the placement optimum " + fmt(worst)};
}

Outcome hier_exact() {
  Rng rng(505);
  int feasible = 0;
  for (int t = 0; t < 100; ++t) {
    auto inst = testkit::random_hier(rng, static_cast<std::size_t>(uniform(rng, 2, 5)), 3);
    bool expect = testkit::hier_oracle(inst, 1);
    HierResult result = solve_hier(inst.dag, inst.boxes, Rational(1));
    const Layout* layout = std::get_if<Layout>(&result);
    if ((layout != nullptr) != expect) {
      std::string why = layout ? "solver found a layout" : std::get<HierFailure>(result).stage + ": " +
                                                             std::get<HierFailure>(result).message;
      return {false, "dag " + std::to_string(t) + ": oracle says " + (expect ? "feasible" : "infeasible") + ", " +
                         why + "\n" + dump(hier_to_json(inst))};
    }
    if (!layout) continue;
    ++feasible;
    validate_layout(*layout);
    for (const auto& [c, p] : inst.dag.edges) {
      const auto& a = layout->at(c);
      const auto& b = layout->at(p);
      if (a.top() != b.bottom() || std::min(a.right(), b.right()) - std::max(a.left(), b.left()) < 1) {
        return {false, "dag " + std::to_string(t) + ": edge " + c + "->" + p + " is not an upward contact"};
      }
    }
  }
  return {true, "100 dags, verdicts match (" + std::to_string(feasible) + " feasible)"};
}

Outcome triangulation_exact() {
  auto five = testkit::five_vertex_dual();
  auto result = realize_triangulation(five);
  const Layout* layout = std::get_if<Layout>(&result);
  if (!layout) return {false, "five-vertex dual: " + std::get<TriangulationFailure>(result).message};
  ProfitGraph g = five.graph();
  if (g.edge_count() != 8 || !realizes(*layout, g)) return {false, "five-vertex dual misses an edge"};

  Rng rng(606);
  int feasible = 0;
  for (int t = 0; t < 25; ++t) {
    auto inst = testkit::random_floorplan(rng, static_cast<std::size_t>(1 + t % 3));
    bool expect = testkit::triangulation_oracle(inst);
    auto res = realize_triangulation(inst);
    const Layout* got = std::get_if<Layout>(&res);
    if ((got != nullptr) != expect) {
      std::string why = got ? "realizer found a layout" : std::get<TriangulationFailure>(res).stage + ": " +
                                                              std::get<TriangulationFailure>(res).message;
      return {false, "instance " + std::to_string(t) + ": oracle says " + (expect ? "feasible" : "infeasible") +
                         ", " + why + "\n" + dump(triangulation_to_json(inst))};
    }
    if (!got) continue;
    ++feasible;
    validate_layout(*got);
    for (const auto& e : inst.graph().edges()) {
      if (!touches_along_segment(got->at(e.a), got->at(e.b))) return {false, "edge " + e.a + "-" + e.b + " missed"};
    }
  }
  return {true, "8/8 on the five-vertex dual; 25 instances match (" + std::to_string(feasible) + " feasible)"};
}

Outcome extremal_counts() {
  Rng rng(707);
  for (std::size_t n = 5; n <= 50; ++n) {
    for (int t = 0; t < 20; ++t) {
      auto boxes = testkit::random_boxes(rng, n, 12, 6);
      Layout layout = place_extremal(boxes);
      std::size_t count = detect_contacts(layout).size();
      if (layout.size() != n || count != 2 * n - 2) {
        return {false, "n=" + std::to_string(n) + ": " + std::to_string(count) + " contacts\n" +
                           dump(layout_to_json({layout, 0, 0}))};
      }
    }
    Layout squares = place_extremal(gen_power_squares(static_cast<int>(n)));
    if (detect_contacts(squares).size() != 2 * n - 2 || !testkit::orientation_classes_are_forests(squares)) {
      return {false, "power squares n=" + std::to_string(n)};
    }
  }
  return {true, "n = 5..50, 20 sets each: exactly 2n-2; power squares forests"};
}

Outcome gadget_witnesses() {
  Rng rng(808);
  for (int t = 0; t < 10; ++t) {
    auto pc = testkit::random_partition(rng);
    auto g = gen_partition_star_instance(pc.values, pc.top);
    if (!g.witness || !realizes(*g.witness, g.graph)) return {false, "partition instance " + std::to_string(t)};
    validate_layout(*g.witness);
    auto tc = testkit::random_three_partition(rng);
    auto h = gen_3partition_tree_instance(tc.values, tc.m, tc.bound, tc.groups);
    if (!h.witness || !realizes(*h.witness, h.graph)) return {false, "3-partition instance " + std::to_string(t)};
    validate_layout(*h.witness);
  }
  return {true, "10 + 10 witnesses realize their graphs without overlap"};
}

Outcome experiment(const std::filesystem::path& corpus_dir) {
  Corpus corpus = load_corpus(corpus_dir);
  if (corpus.documents.size() < 10) return {false, "corpus has fewer than 10 documents"};
  for (const auto& d : corpus.documents) {
    std::istringstream in(d.text);
    std::size_t words = 0;
    std::string w;
    while (in >> w) ++words;
    if (words < 400) return {false, d.id + " has only " + std::to_string(words) + " words"};
  }
  BenchOptions options;
  options.k = 50;
  options.threads = 4;
  BenchReport report = run_bench(corpus, default_stopwords(), options);
  if (!report.skipped.empty()) return {false, "skipped " + report.skipped.front()};
  auto means = report.means();
  Rational cc = means[Algorithm::CycleCover], sf = means[Algorithm::StarForest], rnd = means[Algorithm::Random];
  std::string detail = std::to_string(corpus.documents.size()) + " documents: cycle-cover " + format_percentage(cc) +
                       "%, star-forest " + format_percentage(sf) + "%, random " + format_percentage(rnd) + "%";
  bool ok = cc > sf && sf > rnd && cc >= 2 * rnd;
  return {ok, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Outcome determinism(const std::string& cli, const std::filesystem::path& corpus_dir,
                    const std::filesystem::path& scratch) {
  namespace fs = std::filesystem;
  fs::create_directories(scratch);
  Rng rng(909);
  auto boxes = testkit::random_boxes(rng, 30, 6, 4);
  ProfitInstance inst{boxes, testkit::random_graph(rng, boxes, 6, 0.3), std::nullopt};
  std::ofstream(scratch / "instance.json") << dump(instance_to_json(inst));
  HierInstance dag;
  do {
    dag = testkit::random_hier(rng, 5, 3);
  } while (!testkit::hier_oracle(dag, 1));
  std::ofstream(scratch / "dag.json") << dump(hier_to_json(dag));
  std::ofstream(scratch / "tri.json") << dump(triangulation_to_json(testkit::five_vertex_dual()));
  fs::path doc;
  for (const auto& e : fs::directory_iterator(corpus_dir)) {
    if (e.path().extension() == ".txt") {
      doc = e.path();
      break;
    }
  }

  const std::string in = (scratch / "instance.json").string();
  std::vector<std::pair<std::string, std::string>> commands = {
      {"layout-star", "layout " + in + " --algo star-forest"},
      {"layout-cycle", "layout " + in + " --algo cycle-cover"},
      {"layout-random", "layout " + in + " --algo random --seed 7"},
      {"hier", "hier " + (scratch / "dag.json").string() + " --delta 1"},
      {"tri", "tri " + (scratch / "tri.json").string()},
      {"words", "instance words --text " + doc.string() + " --k 50"},
      {"extremal", "instance extremal --n 12"},
      {"partition", "instance partition --values 5,3,2,4,6"},
  };
  int compared = 0;
  for (const auto& [name, args] : commands) {
    std::string outputs[2][2];
    for (int run = 0; run < 2; ++run) {
      fs::path json = scratch / (name + std::to_string(run) + ".json");
      fs::path svg = scratch / (name + std::to_string(run) + ".svg");
      std::string cmd = "\"" + cli + "\" " + args + " -o \"" + json.string() + "\" --svg \"" + svg.string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, name + " failed: " + cmd};
      outputs[run][0] = slurp(json);
      outputs[run][1] = fs::exists(svg) ? slurp(svg) : "";
    }
    if (outputs[0][0].empty()) return {false, name + " wrote no JSON"};
    if (outputs[0][0] != outputs[1][0]) return {false, name + " JSON differs between runs"};
    if (outputs[0][1] != outputs[1][1]) return {false, name + " SVG differs between runs"};
    ++compared;
  }
  std::string bench[2];
  for (int run = 0; run < 2; ++run) {
    fs::path table = scratch / ("bench" + std::to_string(run) + ".txt");
    std::string cmd = "\"" + cli + "\" bench \"" + corpus_dir.string() + "\" --k 20 > \"" + table.string() + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "bench failed"};
    bench[run] = slurp(table);
  }
  if (bench[0] != bench[1]) return {false, "bench table differs between runs"};
  return {true, std::to_string(compared) + " commands and the bench table byte-identical across reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <crown-cli> <corpus-dir> [scratch-dir]\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::filesystem::path corpus = argv[2];
  const std::filesystem::path scratch =
      argc > 3 ? std::filesystem::path(argv[3]) : std::filesystem::temp_directory_path() / "crown-acceptance";

  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"cycle-cover bound", cycle_cover_bound},
      {"cycle layouts", cycle_layouts},
      {"star approximation", star_ratio},
      {"tree approximation", tree_ratio},
      {"hierarchical exactness", hier_exact},
      {"triangulation realizer", triangulation_exact},
      {"extremal contact counts", extremal_counts},
      {"gadget witnesses", gadget_witnesses},
      {"word-cloud experiment", [&] { return experiment(corpus); }},
      {"determinism", [&] { return determinism(cli, corpus, scratch); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.detail << " ("
              << time.str() << " s)" << std::endl;
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
