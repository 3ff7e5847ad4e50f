// gallai_lab: command-line front end.
//
// Exit codes: 0 clean / absent, 1 structure found, 2 usage or parse error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gallai_lab/canonical.hpp"
#include "gallai_lab/coloring.hpp"
#include "gallai_lab/constructions.hpp"
#include "gallai_lab/detectors.hpp"
#include "gallai_lab/gallai_structure.hpp"
#include "gallai_lab/search.hpp"

namespace gl = gallai_lab;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kClean = 0;
constexpr int kFound = 1;
constexpr int kUsage = 2;

// Parameter error naming the flag it came from.
struct FlagError {
  std::string flag;
  std::string message;
};

ordered_json witness_json(const gl::Witness& w) {
  ordered_json j;
  j["kind"] = std::string(gl::to_string(w.kind));
  j["color"] = w.color ? ordered_json(*w.color) : ordered_json(nullptr);
  j["vertices"] = w.vertices;
  return j;
}

std::string vertex_list(const std::vector<int>& vs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
  return out.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    gl::write_text_file(path, text);
  }
}

std::vector<int> parse_vertex_list(const std::string& flag, const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw FlagError{flag, "not a vertex number: \"" + item + "\""};
    }
  }
  return out;
}

gl::VertexSubset subset_from_flag(const std::string& flag, const std::string& text, int n) {
  auto vs = parse_vertex_list(flag, text);
  for (int v : vs) {
    if (v < 0 || v >= n) throw FlagError{flag, "vertex " + std::to_string(v) + " outside 0.." + std::to_string(n - 1)};
  }
  return gl::VertexSubset(n, vs);
}

void require_color(const std::string& flag, int c, const gl::ColoredCompleteGraph& g) {
  if (c < 1 || c > g.palette()) {
    throw FlagError{flag, "color " + std::to_string(c) + " outside 1.." + std::to_string(g.palette())};
  }
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string kind;
  int ell = 0, k = 0, m = 0, n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  gl::ColoredCompleteGraph g;
  gl::ConstructionRecipe recipe;
  if (a.kind == "extremal-odd") {
    if (a.ell < 2) throw FlagError{"--ell", "must be >= 2"};
    if (a.k < 1) throw FlagError{"--k", "must be >= 1"};
    try {
      auto c = gl::build_extremal_odd(a.ell, a.k);
      g = std::move(c.graph);
      recipe = std::move(c.recipe);
    } catch (const gl::Error& e) {
      throw FlagError{"--k", e.what()};
    }
  } else if (a.kind == "ramsey-lower") {
    if (a.m < 5 || a.m % 2 == 0) throw FlagError{"--m", "must be odd and >= 5"};
    if (a.n < a.m) throw FlagError{"--n", "must be >= --m"};
    try {
      auto c = gl::build_ramsey_cycle_lower(a.m, a.n);
      g = std::move(c.graph);
      recipe = std::move(c.recipe);
    } catch (const gl::Error& e) {
      throw FlagError{"--n", e.what()};
    }
  } else {
    if (a.n < 1 || a.n > gl::kMaxVertices) {
      throw FlagError{"--n", "must lie in 1.." + std::to_string(gl::kMaxVertices)};
    }
    if (a.k < 1 || a.k > gl::kMaxColors) {
      throw FlagError{"--k", "must lie in 1.." + std::to_string(gl::kMaxColors)};
    }
    g = gl::random_gallai(a.n, a.k, a.seed);
    recipe.kind = gl::RecipeKind::RandomSubstitution;
    recipe.parameters = {{"n", a.n}, {"k", a.k}, {"seed", static_cast<std::int64_t>(a.seed)}};
    recipe.expected_order = a.n;
    recipe.expected_properties = {gl::ExpectedProperty{}};
  }
  std::vector<std::string> header{"recipe: " + recipe.to_json()};
  emit(a.out, gl::serialize(g, header));
  if (!a.out.empty()) std::cerr << "wrote " << a.out << " (" << g.order() << " vertices)\n";
  return kClean;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  std::string file;
  int cycle = 0;
  bool json = false;
};

int cmd_check(const CheckArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  if (a.cycle != 0 && a.cycle < 3) throw FlagError{"--cycle", "must be >= 3"};

  std::vector<gl::Witness> cycles;
  if (a.cycle != 0) {
    for (gl::Color c = 1; c <= g.palette(); ++c) {
      if (auto w = gl::find_mono_cycle(g, c, a.cycle)) cycles.push_back(*w);
    }
  }
  const auto rainbow = gl::find_rainbow_triangle(g);
  const bool found = !cycles.empty() || rainbow.has_value();

  if (a.json) {
    ordered_json j;
    j["order"] = g.order();
    j["palette"] = g.palette();
    if (a.cycle != 0) j["cycle"] = a.cycle;
    ordered_json ws = ordered_json::array();
    for (const auto& w : cycles) ws.push_back(witness_json(w));
    j["mono_cycles"] = ws;
    j["rainbow_triangle"] = rainbow ? witness_json(*rainbow) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
    return found ? kFound : kClean;
  }

  if (a.cycle != 0) {
    if (cycles.empty()) {
      std::cout << "monochromatic C_" << a.cycle << ": absent in all colors\n";
    }
    for (const auto& w : cycles) {
      std::cout << "monochromatic C_" << a.cycle << " in color " << *w.color << ": "
                << vertex_list(w.vertices) << "\n";
    }
  }
  if (rainbow) {
    std::cout << "rainbow triangle: " << vertex_list(rainbow->vertices) << "\n";
  } else {
    std::cout << "rainbow triangle: absent\n";
  }
  return found ? kFound : kClean;
}

// ---------------------------------------------------------------------------
// partition

struct PartitionArgs {
  std::string file;
  bool finest = false;
  bool json = false;
  std::string out;
};

ordered_json partition_json(const gl::GallaiPartition& p) {
  ordered_json parts = ordered_json::array();
  for (const auto& s : p.parts) parts.push_back(s.members());
  ordered_json pairs = ordered_json::array();
  for (int i = 0; i < p.part_count(); ++i) {
    for (int j = i + 1; j < p.part_count(); ++j) pairs.push_back({i, j, p.part_pair_color[i][j]});
  }
  ordered_json j;
  j["parts"] = parts;
  j["between_colors"] = p.between_colors;
  j["pair_colors"] = pairs;
  return j;
}

int cmd_partition(const PartitionArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  if (g.order() < 2) throw FlagError{"FILE", "partition needs at least 2 vertices"};
  gl::GallaiPartition p;
  try {
    p = gl::gallai_partition(g, !a.finest);
  } catch (const gl::NotGallaiError& e) {
    if (a.json) {
      ordered_json j;
      j["error"] = "NotGallai";
      j["witness"] = witness_json(e.witness());
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "not a Gallai coloring; rainbow triangle: " << vertex_list(e.witness().vertices)
                << "\n";
    }
    return kFound;
  }
  const auto j = partition_json(p);
  if (!a.out.empty()) gl::write_text_file(a.out, j.dump(2) + "\n");
  if (a.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "parts: " << p.part_count() << "\n";
    for (int i = 0; i < p.part_count(); ++i) {
      std::cout << "  part " << i << " (" << p.parts[i].size() << "): " << vertex_list(p.parts[i].members())
                << "\n";
    }
    std::cout << "between colors:";
    for (gl::Color c : p.between_colors) std::cout << " " << c;
    std::cout << "\n";
  }
  return kClean;
}

// ---------------------------------------------------------------------------
// lemmas

struct LemmaArgs {
  std::string file;
  bool json = false;
  std::string out;
  int color = 1;
  int edges = 0;
  int red = 1, blue = 2, a = 0, b = 0;
  std::string vertices;
  int k = 0, m = 0;
  std::string part_a;
  std::vector<std::string> part_b;
};

int report_witness(const gl::Witness& w, bool json, const std::string& label) {
  if (json) {
    std::cout << witness_json(w).dump(2) << "\n";
  } else {
    std::cout << label;
    if (w.color) std::cout << " in color " << *w.color;
    std::cout << ": " << vertex_list(w.vertices) << "\n";
  }
  return kFound;
}

int report_precondition(const gl::PreconditionError& e, bool json) {
  if (json) {
    ordered_json j;
    j["precondition"] = std::string(gl::to_string(e.code()));
    j["vertex"] = e.vertex();
    j["degree"] = e.degree();
    j["message"] = e.what();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "precondition failed: " << e.what() << "\n";
  }
  return kUsage;
}

int cmd_dirac(const LemmaArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  require_color("--color", a.color, g);
  try {
    return report_witness(gl::dirac_hamiltonian(g.color_class(a.color)), a.json, "hamilton cycle");
  } catch (const gl::PreconditionError& e) {
    return report_precondition(e, a.json);
  }
}

int cmd_eg_path(const LemmaArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  require_color("--color", a.color, g);
  if (a.edges < 2) throw FlagError{"--edges", "must be >= 2"};
  auto w = gl::erdos_gallai_path(g.color_class(a.color), a.edges);
  if (!w) {
    if (a.json) {
      std::cout << "null\n";
    } else {
      std::cout << "no path with " << a.edges << " edges in color " << a.color << "\n";
    }
    return kClean;
  }
  w->color = a.color;
  return report_witness(*w, a.json, "path");
}

int cmd_colored_split(const LemmaArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  require_color("--red", a.red, g);
  require_color("--blue", a.blue, g);
  if (a.red == a.blue) throw FlagError{"--blue", "must differ from --red"};
  if (a.a < 1) throw FlagError{"--a", "must be >= 1"};
  if (a.b < 1) throw FlagError{"--b", "must be >= 1"};
  const auto host = a.vertices.empty() ? gl::VertexSubset::all(g.order())
                                       : subset_from_flag("--vertices", a.vertices, g.order());
  try {
    return report_witness(gl::colored_path_split(g, a.red, a.blue, host, a.a, a.b), a.json, "path");
  } catch (const gl::PreconditionError& e) {
    return report_precondition(e, a.json);
  }
}

int cmd_recolor(const LemmaArgs& a) {
  const auto g = gl::read_coloring_file(a.file);
  if (a.k < 2) throw FlagError{"--k", "must be >= 2"};
  if (a.m < 3) throw FlagError{"--m", "must be >= 3"};
  const auto part_a = subset_from_flag("--part-a", a.part_a, g.order());
  std::vector<gl::VertexSubset> bs;
  for (const auto& text : a.part_b) bs.push_back(subset_from_flag("--part-b", text, g.order()));
  gl::ColoredCompleteGraph out;
  try {
    out = gl::recolor_small_parts(g, part_a, bs, a.k, a.m);
  } catch (const gl::Error& e) {
    if (e.code() != gl::ErrorCode::HypothesisViolated) throw;
    if (a.json) {
      ordered_json j;
      j["precondition"] = std::string(gl::to_string(e.code()));
      j["message"] = e.what();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "precondition failed: " << e.what() << "\n";
    }
    return kUsage;
  }
  emit(a.out, gl::serialize(out));
  return kClean;
}

// ---------------------------------------------------------------------------
// search / verify

struct SearchArgs {
  std::string family;
  int m = 0, n = 0, k = 0, n_max = 0;
  std::uint64_t budget = 0;
  int threads = 1;
  std::string limits;
  std::string out;
  bool json = false;
  bool no_timing = false;
};

void print_report(const gl::SearchReport& r) {
  std::cout << gl::to_string(r.family);
  for (const auto& [name, value] : r.params) std::cout << " " << name << "=" << value;
  std::cout << "\n";
  if (r.value) {
    std::cout << "value: " << *r.value << "\n";
  } else {
    std::cout << "lower: " << r.lower << "\n";
    std::cout << "upper: " << (r.upper ? std::to_string(*r.upper) : std::string("unknown")) << "\n";
  }
  if (r.witness) std::cout << "witness order: " << r.witness->order() << "\n";
  std::cout << "nodes: " << r.stats.nodes << ", canonical: " << r.stats.canonical
            << ", rejected: " << r.stats.rejected << ", ms: " << r.stats.ms << "\n";
}

int cmd_search(const SearchArgs& a) {
  gl::SearchOptions options;
  options.limits = gl::SearchLimits::from_environment();
  if (!a.limits.empty()) {
    try {
      auto extra = gl::SearchLimits::parse(a.limits);
      for (int c = 1; c <= 8; ++c) options.limits.set(c, extra.max_order(c));
    } catch (const gl::Error& e) {
      throw FlagError{"--limits", e.what()};
    }
  }
  if (a.budget != 0) options.budget = a.budget;
  if (a.threads < 1) throw FlagError{"--threads", "must be >= 1"};
  options.threads = a.threads;
  if (a.m < 3) throw FlagError{"--m", "must be >= 3"};

  gl::SearchReport r;
  if (a.family == "ramsey") {
    if (a.n < 3) throw FlagError{"--n", "must be >= 3"};
    const int n_max = a.n_max ? a.n_max : options.limits.max_order(2);
    r = gl::search_ramsey(a.m, a.n, n_max, options);
  } else {
    if (a.k < 1) throw FlagError{"--k", "must be >= 1"};
    const int n_max = a.n_max ? a.n_max : std::min(options.limits.max_order(a.k), gl::kMaxVertices);
    r = gl::search_gallai_ramsey(a.m, a.k, n_max, options);
  }
  if (a.no_timing) r.stats.ms = 0;
  if (!a.out.empty()) gl::write_report(r, a.out);
  if (a.json) {
    std::cout << r.to_json("") << "\n";
  } else {
    print_report(r);
  }
  return kClean;
}

int cmd_verify(const std::string& path, bool json) {
  const auto r = gl::read_report(path);
  const auto check = gl::verify_certificate(r);
  if (json) {
    ordered_json j;
    j["valid"] = check.valid;
    j["reason"] = check.reason;
    j["offending"] = check.offending ? witness_json(*check.offending) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else if (check) {
    std::cout << "certificate valid\n";
  } else {
    std::cout << "certificate invalid: " << check.reason << "\n";
    if (check.offending) std::cout << "offending: " << vertex_list(check.offending->vertices) << "\n";
  }
  return check ? kClean : kFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gallai-Ramsey workbench for odd cycles"};
  app.require_subcommand(1);
  int code = kClean;

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a coloring with a recipe header");
  gen_cmd->add_option("kind", gen.kind, "extremal-odd | ramsey-lower | random")
      ->required()
      ->check(CLI::IsMember({"extremal-odd", "ramsey-lower", "random"}));
  gen_cmd->add_option("--ell", gen.ell, "Half cycle length l (cycle C_{2l+1})");
  gen_cmd->add_option("--k", gen.k, "Color count");
  gen_cmd->add_option("--m", gen.m, "Color-1 cycle order");
  gen_cmd->add_option("--n", gen.n, "Order (random) or color-2 cycle order (ramsey-lower)");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->default_val(0);
  gen_cmd->add_option("-o,--output", gen.out, "Output file (stdout if omitted)");
  gen_cmd->callback([&] { code = cmd_gen(gen); });

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Look for monochromatic cycles and rainbow triangles");
  check_cmd->add_option("file", check.file)->required();
  check_cmd->add_option("--cycle", check.cycle, "Cycle order to look for in every color");
  check_cmd->add_flag("--json", check.json);
  check_cmd->callback([&] { code = cmd_check(check); });

  PartitionArgs part;
  auto* part_cmd = app.add_subcommand("partition", "Gallai partition of a coloring");
  part_cmd->add_option("file", part.file)->required();
  part_cmd->add_flag("--finest", part.finest, "Skip merging of twin parts");
  part_cmd->add_flag("--json", part.json);
  part_cmd->add_option("-o,--output", part.out, "Write partition JSON here");
  part_cmd->callback([&] { code = cmd_partition(part); });

  LemmaArgs lemma;
  auto* lemmas = app.add_subcommand("lemmas", "Constructive lemma engines");
  lemmas->require_subcommand(1);
  auto lemma_common = [&](CLI::App* sub) {
    sub->add_option("file", lemma.file)->required();
    sub->add_flag("--json", lemma.json);
  };
  auto* dirac = lemmas->add_subcommand("dirac", "Hamilton cycle in a color class");
  lemma_common(dirac);
  dirac->add_option("--color", lemma.color)->default_val(1);
  dirac->callback([&] { code = cmd_dirac(lemma); });

  auto* eg = lemmas->add_subcommand("eg-path", "Path with --edges edges in a color class");
  lemma_common(eg);
  eg->add_option("--color", lemma.color)->default_val(1);
  eg->add_option("--edges", lemma.edges)->required();
  eg->callback([&] { code = cmd_eg_path(lemma); });

  auto* split = lemmas->add_subcommand("colored-split", "Red path on a vertices or blue path on b");
  lemma_common(split);
  split->add_option("--red", lemma.red)->default_val(1);
  split->add_option("--blue", lemma.blue)->default_val(2);
  split->add_option("--a", lemma.a)->required();
  split->add_option("--b", lemma.b)->required();
  split->add_option("--vertices", lemma.vertices, "Comma-separated host vertices (default all)");
  split->callback([&] { code = cmd_colored_split(lemma); });

  auto* recolor = lemmas->add_subcommand("recolor", "Recolor small parts B_1..B_{k-1}");
  lemma_common(recolor);
  recolor->add_option("--k", lemma.k)->required();
  recolor->add_option("--m", lemma.m)->required();
  recolor->add_option("--part-a", lemma.part_a, "Comma-separated vertices of A")->required();
  recolor->add_option("--part-b", lemma.part_b, "Comma-separated vertices of B_i, repeated in order");
  recolor->add_option("-o,--output", lemma.out, "Output coloring file (stdout if omitted)");
  recolor->callback([&] { code = cmd_recolor(lemma); });

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Exhaustive threshold search");
  search_cmd->add_option("family", search.family, "ramsey | gallai")
      ->required()
      ->check(CLI::IsMember({"ramsey", "gallai"}));
  search_cmd->add_option("--m", search.m, "Cycle order (color 1 for ramsey)")->required();
  search_cmd->add_option("--n", search.n, "Color-2 cycle order (ramsey)");
  search_cmd->add_option("--k", search.k, "Color count (gallai)");
  search_cmd->add_option("--n-max", search.n_max, "Largest order to examine");
  search_cmd->add_option("--budget", search.budget, "Node budget (0 = unlimited)")->default_val(0);
  search_cmd->add_option("--threads", search.threads)->default_val(1);
  search_cmd->add_option("--limits", search.limits, "Exhaustive limits, e.g. \"2=10,3=8\"");
  search_cmd->add_option("-o,--output", search.out, "Report JSON path; witness written beside it");
  search_cmd->add_flag("--json", search.json);
  search_cmd->add_flag("--no-timing", search.no_timing, "Report ms as 0");
  search_cmd->callback([&] { code = cmd_search(search); });

  std::string verify_path;
  bool verify_json = false;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a search report's witness");
  verify_cmd->add_option("report", verify_path)->required();
  verify_cmd->add_flag("--json", verify_json);
  verify_cmd->callback([&] { code = cmd_verify(verify_path, verify_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kClean : kUsage;
  } catch (const FlagError& e) {
    std::cerr << "error: " << e.flag << ": " << e.message << "\n";
    return kUsage;
  } catch (const gl::ParseError& e) {
    std::cerr << "error: " << e.detail() << "\n";
    return kUsage;
  } catch (const gl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return code;
}
