#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "coxgraph/affine.hpp"
#include "coxgraph/catalog.hpp"
#include "coxgraph/errors.hpp"
#include "coxgraph/finord.hpp"
#include "coxgraph/indefinite.hpp"
#include "coxgraph/oracle.hpp"
#include "json.hpp"

using namespace coxgraph;
using nlohmann::json;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInternal = 3;
constexpr const char* kCacheEnv = "COXGRAPH_CACHE_DIR";

struct Options {
  std::string system_file;
  std::string type;
  std::optional<std::string> word;
  std::string example;
  std::string format = "json";
  std::string output;
  int oracle_budget = -1;
  bool verify = false;
  int random_length = 0;
  unsigned seed = 1;
};

struct Input {
  SystemPtr sys;
  std::optional<Element> w;
  const CatalogEntry* example = nullptr;
};

SystemPtr parse_type(const std::string& text) {
  static const std::regex re(R"(^([A-I])_?(\d+)(?:\((\d+)\))?(~|\^\(1\))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw Error(ErrorCode::ParseError, "bad type symbol '" + text + "'");
  const char family = m[1].str()[0];
  const int n = std::stoi(m[2].str());
  if (m[4].matched) {
    if (m[3].matched) throw Error(ErrorCode::ParseError, "dihedral types have no affine extension");
    return affine_system(family, n);
  }
  return finite_system(family, n, m[3].matched ? std::stoi(m[3].str()) : 0);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load(const Options& o, bool need_word) {
  Input in;
  if (!o.example.empty()) {
    in.example = find_example(o.example);
    if (!in.example) throw Error(ErrorCode::ParseError, "unknown example '" + o.example + "'");
    in.sys = in.example->system();
    in.w = in.example->element(*in.sys);
  } else if (!o.system_file.empty()) {
    std::vector<std::string> names;
    Matrix m = read_matrix_json(read_file(o.system_file), &names);
    in.sys = CoxeterSystem::make(m, names);
  } else if (!o.type.empty()) {
    in.sys = parse_type(o.type);
  } else {
    throw Error(ErrorCode::ParseError, "one of --system, --type or --example is required");
  }
  if (o.example.empty()) {
    if (o.random_length > 0) {
      std::mt19937 rng(o.seed);
      std::uniform_int_distribution<int> pick(0, in.sys->rank() - 1);
      Word w;
      for (int i = 0; i < o.random_length; ++i) w.push_back(pick(rng));
      in.w = reduce(*in.sys, w);
    } else if (o.word) {
      in.w = reduce(*in.sys, parse_word(*o.word, in.sys.get()));
    }
  }
  if (need_word && !in.w) throw Error(ErrorCode::ParseError, "a word is required (--word, --random or --example)");
  return in;
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + o.output);
  out << text;
}

std::string names_of(const CoxeterSystem& sys, const Word& w) { return word_string(w, &sys); }

enum class Pipeline { FiniteOrder, Affine, Indefinite };

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::FiniteOrder: return "finite-order";
    case Pipeline::Affine: return "affine";
    case Pipeline::Indefinite: return "indefinite";
  }
  return "?";
}

Pipeline dispatch(const Element& w) {
  const CoxeterSystem& sys = w.system();
  if (order(w)) return Pipeline::FiniteOrder;
  if (sys.type().size() != 1)
    throw Error(ErrorCode::UnsupportedShape, "reducible ambient system; restrict to one irreducible component");
  if (sys.is_irreducible_affine()) return Pipeline::Affine;
  return Pipeline::Indefinite;
}

struct Graphs {
  ConjGraph graph;
  ConjGraph tight;
};

Graphs compute(const Element& w) {
  const CoxeterSystem& sys = w.system();
  switch (dispatch(w)) {
    case Pipeline::FiniteOrder: {
      Element r = cyclically_reduce(TwistedElement(w)).value.body;
      ConjGraph g = finite_structural_graph(r);
      ConjGraph t = tight_closure(g, [&](Subset K) { return sys.spherical(K); });
      return {g, t};
    }
    case Pipeline::Affine: {
      AffineGraphReport R = structural_graph_affine(w);
      return {R.graph, R.tight};
    }
    case Pipeline::Indefinite: {
      IndefiniteGraphReport R = structural_graph_indefinite(w);
      return {R.graph, R.tight};
    }
  }
  throw Error(ErrorCode::InternalMismatch, "unreachable");
}

std::string render(const Options& o, const ConjGraph& g) {
  if (o.format == "dot") return export_dot(g);
  return export_json(g);
}

// FNV-1a, stable across platforms.
std::string cache_key(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream ss;
  ss << std::hex << h;
  return ss.str();
}

std::optional<std::filesystem::path> cache_path(const std::string& cmd, const Options& o, const Input& in) {
  const char* dir = std::getenv(kCacheEnv);
  if (!dir || !*dir) return std::nullopt;
  std::string key = cmd + "|" + o.format + "|" + write_matrix_json(*in.sys) + "|" + word_string(in.w->word());
  return std::filesystem::path(dir) / (cache_key(key) + (o.format == "dot" ? ".dot" : ".json"));
}

int verify_shape(const CatalogEntry& e, const Graphs& g) {
  const ExpectedShape& x = e.expected;
  std::vector<std::string> diffs;
  auto cmp = [&](const char* field, int expected, int got) {
    if (expected >= 0 && expected != got)
      diffs.push_back(std::string(field) + " expected " + std::to_string(expected) + " got " + std::to_string(got));
  };
  cmp("vertices", x.vertices, static_cast<int>(g.graph.size()));
  cmp("edges", x.edges, static_cast<int>(g.graph.edges().size()));
  cmp("diameter", x.diameter, g.graph.diameter());
  cmp("complete", x.complete, g.graph.complete() ? 1 : 0);
  cmp("tight_complete", x.tight_complete, g.tight.complete() ? 1 : 0);
  if (diffs.empty()) {
    std::cerr << "VERIFIED " << e.name << "\n";
    return 0;
  }
  for (const std::string& d : diffs) std::cerr << "MISMATCH " << e.name << ": " << d << "\n";
  return kExitMismatch;
}

int run_classify(const Options& o) {
  Input in = load(o, false);
  const CoxeterSystem& sys = *in.sys;
  json j;
  j["rank"] = sys.rank();
  j["names"] = sys.names();
  j["crystallographic"] = sys.is_crystallographic();
  json comps = json::array();
  for (const TypeTag& t : sys.type()) {
    const char* kind = t.kind == Kind::Finite ? "finite" : t.kind == Kind::Affine ? "affine" : "indefinite";
    comps.push_back({{"type", t.name()}, {"kind", kind}, {"members", sys.subset_name(t.members)}});
  }
  j["components"] = comps;
  if (in.w) {
    const Element& w = *in.w;
    j["word"] = names_of(sys, w.word());
    j["length"] = w.length();
    auto ord = order(w);
    j["order"] = ord ? json(*ord) : json("infinite");
    j["cyclically_reduced"] = is_cyclically_reduced(w);
    j["parabolic_closure"] = sys.subset_name(parabolic_closure(w).K);
    try {
      j["pipeline"] = pipeline_name(dispatch(w));
    } catch (const Error& e) {
      j["pipeline"] = nullptr;
      j["pipeline_error"] = e.what();
    }
  }
  emit(o, j.dump(2));
  return 0;
}

int run_reduce(const Options& o) {
  Input in = load(o, true);
  emit(o, names_of(*in.sys, in.w->word()));
  return 0;
}

int run_cyc(const Options& o) {
  Input in = load(o, true);
  const CoxeterSystem& sys = *in.sys;
  CycClass c = cyc_class(*in.w);
  json j;
  j["word"] = names_of(sys, in.w->word());
  j["cyclically_reduced"] = is_cyclically_reduced(*in.w);
  j["class_size"] = c.elements.size();
  j["min_length"] = c.min_length;
  json els = json::array();
  for (int i : c.minimal()) els.push_back({{"word", names_of(sys, c.elements[i].body.word())}, {"witness", names_of(sys, c.path(i))}});
  j["minimal"] = els;
  emit(o, j.dump(2));
  return 0;
}

int run_graph(const Options& o, bool tight) {
  Input in = load(o, true);
  const std::string cmd = tight ? "tight" : "graph";
  auto cached = cache_path(cmd, o, in);
  if (cached && !o.verify && std::filesystem::exists(*cached)) {
    emit(o, read_file(cached->string()));
    return 0;
  }
  Graphs g = compute(*in.w);
  std::string text = render(o, tight ? g.tight : g.graph);
  if (cached) {
    std::filesystem::create_directories(cached->parent_path());
    std::ofstream(*cached) << text;
  }
  emit(o, text);
  if (o.verify) {
    if (!in.example) throw Error(ErrorCode::ParseError, "--verify needs --example");
    return verify_shape(*in.example, g);
  }
  return 0;
}

int run_check(const Options& o) {
  Input in = load(o, true);
  const Element& w = *in.w;
  Graphs g = compute(w);
  OracleGraph oracle = bfs_structural_oracle(w, o.oracle_budget);
  GraphMatch m = match_graphs(g.graph, oracle);
  json j;
  j["word"] = names_of(*in.sys, w.word());
  j["pipeline"] = pipeline_name(dispatch(w));
  j["vertices"] = g.graph.size();
  j["oracle_vertices"] = oracle.graph.size();
  j["result"] = m.ok ? "MATCH" : "MISMATCH";
  if (!m.ok) j["reason"] = m.reason;
  emit(o, j.dump(2));
  return m.ok ? 0 : kExitMismatch;
}

int run_examples(const Options& o) {
  json j = json::array();
  for (const CatalogEntry& e : catalog()) j.push_back({{"name", e.name}, {"description", e.description}});
  emit(o, j.dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural conjugation graphs of Coxeter group elements"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--system", o.system_file, "Coxeter matrix JSON file {\"matrix\": [[...]], \"names\": [...]}");
    c->add_option("--type", o.type, "Standard type symbol, e.g. A3, I2(5), D7~");
    c->add_option("--word", o.word, "Word as generator names or 0-based indices, e.g. \"1 3 4\"");
    c->add_option("--example", o.example, "Built-in example name (see 'examples')");
    c->add_option("--random", o.random_length, "Use a random word of this length");
    c->add_option("--seed", o.seed, "Seed for --random");
    c->add_option("--output", o.output, "Write to a file instead of stdout");
  };
  CLI::App* classify = app.add_subcommand("classify", "Type report for the system and word");
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "ShortLex normal form");
  CLI::App* cyc = app.add_subcommand("cyc", "Minimal elements of the cyclic shift class with witnesses");
  CLI::App* graph = app.add_subcommand("graph", "Structural conjugation graph");
  CLI::App* tight = app.add_subcommand("tight", "Tight closure of the structural conjugation graph");
  CLI::App* check = app.add_subcommand("check", "Compare the pipeline with the brute-force oracle");
  CLI::App* examples = app.add_subcommand("examples", "List built-in examples");
  for (CLI::App* c : {classify, reduce_cmd, cyc, graph, tight, check}) common(c);
  for (CLI::App* c : {graph, tight}) {
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    c->add_flag("--verify", o.verify, "Compare with the published shape of --example");
  }
  check->add_option("--oracle-budget", o.oracle_budget, "Extra length explored by the oracle");
  examples->add_option("--output", o.output, "Write to a file instead of stdout");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*classify) return run_classify(o);
    if (*reduce_cmd) return run_reduce(o);
    if (*cyc) return run_cyc(o);
    if (*graph) return run_graph(o, false);
    if (*tight) return run_graph(o, true);
    if (*check) return run_check(o);
    if (*examples) return run_examples(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
